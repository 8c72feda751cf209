//! Scalar abstraction shared by the exact and floating back ends.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};

use num_complex::Complex;
use num_traits::{Float, One, ToPrimitive, Zero};

use crate::surd::Surd;

static EPS_BITS: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

/// Global numerical tolerance used by floating scalars.
pub fn eps() -> f64 {
    f64::from_bits(EPS_BITS.load(Ordering::Relaxed))
}

pub fn set_eps(e: f64) {
    assert!(e > 0.0 && e.is_finite(), "tolerance must be positive");
    EPS_BITS.store(e.to_bits(), Ordering::Relaxed);
}

/// A field of complex scalars closed under conjugation.
///
/// `EXACT` scalars compare with `==` and never consult the tolerance.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn conj(&self) -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(n: i64, d: i64) -> Self;
    fn i() -> Self;
    fn re(&self) -> Self;
    fn im(&self) -> Self;
    fn to_c64(&self) -> Complex<f64>;

    /// Zero for exact scalars, below `eps()` in modulus otherwise.
    fn is_negligible(&self) -> bool;

    /// Sign of the real part (tolerance-aware for floats).
    fn real_sign(&self) -> i8;

    /// Nonnegative square root of a nonnegative real, if it lies in the field.
    fn sqrt_real(&self) -> Option<Self>;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Lift a float; exact types refuse.
    fn from_c64(z: Complex<f64>) -> Option<Self>;

    /// Embed an exact value (rounding for floating types).
    fn from_surd(x: &Surd) -> Self;

    fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }

    fn norm_sqr(&self) -> Self {
        self.conj() * self.clone()
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_negligible()
    }

    fn is_real(&self) -> bool {
        self.im().is_negligible()
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for Complex<$t> {
            const EXACT: bool = false;

            fn conj(&self) -> Self {
                Complex::conj(self)
            }
            fn from_i64(n: i64) -> Self {
                Complex::new(n as $t, 0.0)
            }
            fn from_ratio(n: i64, d: i64) -> Self {
                Complex::new(n as $t / d as $t, 0.0)
            }
            fn i() -> Self {
                Complex::new(0.0, 1.0)
            }
            fn re(&self) -> Self {
                Complex::new(self.re, 0.0)
            }
            fn im(&self) -> Self {
                Complex::new(self.im, 0.0)
            }
            fn to_c64(&self) -> Complex<f64> {
                Complex::new(self.re.to_f64().unwrap(), self.im.to_f64().unwrap())
            }
            fn is_negligible(&self) -> bool {
                (self.norm() as f64) <= eps()
            }
            fn real_sign(&self) -> i8 {
                let r = self.re as f64;
                if r.abs() <= eps() {
                    0
                } else if r > 0.0 {
                    1
                } else {
                    -1
                }
            }
            fn sqrt_real(&self) -> Option<Self> {
                let r = self.re;
                if (r as f64) < -eps() {
                    return None;
                }
                Some(Complex::new(Float::sqrt(r.max(0.0)), 0.0))
            }
            fn from_c64(z: Complex<f64>) -> Option<Self> {
                Some(Complex::new(z.re as $t, z.im as $t))
            }
            fn from_surd(x: &Surd) -> Self {
                let z = x.to_c64_impl();
                Complex::new(z.re as $t, z.im as $t)
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);

/// Square root of a float scalar that always succeeds; used by float-only code.
pub fn fsqrt<S: Scalar>(x: &S) -> S {
    x.sqrt_real()
        .unwrap_or_else(|| panic!("square root of negative value {x}"))
}
