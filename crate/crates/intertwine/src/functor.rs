//! The functor interface shared by strict, quasitensor and relaxed functors.

use serde::Serialize;

use crate::category::{Arrow, Category};
use crate::error::Result;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctorKind {
    /// `mu_tilde` is always an identity.
    Strict,
    /// `mu_tilde` are isometries.
    Quasitensor,
    /// `mu_tilde` are unitaries.
    Relaxed,
}

/// A *-functor `mu: A -> M` with comparison maps
/// `mu_tilde(u, v) in (mu_u x mu_v, mu_{u x v})`.
pub trait Functor<S: Scalar>: Send + Sync {
    type Src: Category<S>;
    type Tgt: Category<S>;

    fn src(&self) -> &Self::Src;
    fn tgt(&self) -> &Self::Tgt;
    fn name(&self) -> String;
    fn kind(&self) -> FunctorKind;
    fn map_obj(&self, u: &SrcObj<S, Self>) -> TgtObj<S, Self>;
    fn map_arrow(&self, a: &Arrow<S, SrcObj<S, Self>>) -> Result<Arrow<S, TgtObj<S, Self>>>;
    fn mu_tilde(&self, u: &SrcObj<S, Self>, v: &SrcObj<S, Self>) -> Result<Arrow<S, TgtObj<S, Self>>>;
}

pub type SrcObj<S, F> = <<F as Functor<S>>::Src as Category<S>>::Obj;
pub type TgtObj<S, F> = <<F as Functor<S>>::Tgt as Category<S>>::Obj;
