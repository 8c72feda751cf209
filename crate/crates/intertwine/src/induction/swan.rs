//! Left multiplication operators, the Swan isometry and its range projection.

use crate::category::{Arrow, Category, ConjugateSolution};
use crate::error::{Error, Result};
use crate::functor::Functor;
use crate::hilb::Hilb;
use crate::quasitensor::multi_mu;
use crate::report::CheckResult;
use crate::scalar::Scalar;

use super::{unit_vector, AObj, Elem, Induction, MObj};

impl<S, T, M> Induction<S, T, M>
where
    S: Scalar,
    T: Functor<S, Tgt = Hilb<S>>,
    M: Functor<S, Src = T::Src>,
{
    /// `L_u(phi) xi = (1_{mu_v} x phi) . xi` for `phi in tau_v`.
    pub fn l_op(&self, v: &AObj<S, T>, phi: &[S], xi: &Elem<S, T, M>) -> Result<Elem<S, T, M>> {
        self.dot(&self.x(v, phi)?, xi)
    }

    /// `L_u(phi)^* = lambda(mu(R_v^* x 1_u)) L_{v x u}(j_v phi)` on the bimodule over `v x u`.
    pub fn l_adj(
        &self,
        sol_v: &ConjugateSolution<S, AObj<S, T>>,
        u: &AObj<S, T>,
        phi: &[S],
        xi: &Elem<S, T, M>,
    ) -> Result<Elem<S, T, M>> {
        let a = self.a();
        let jphi = self.j(sol_v, phi)?;
        let y = self.dot(&self.x(&sol_v.conj, &jphi)?, xi)?;
        let cap = a.tensor(&a.adjoint(&sol_v.r), &a.identity(u));
        self.lambda(&self.mu.map_arrow(&cap)?, &y, std::slice::from_ref(u))
    }

    /// `S_z xi = sum_i e_i x L(e_i)^* xi`, as the list of coefficients in the algebra.
    pub fn swan(&self, z: &AObj<S, T>, xi: &Elem<S, T, M>) -> Result<Vec<Elem<S, T, M>>> {
        let sol = self.a().solution(z)?;
        let d = self.tau.map_obj(z);
        let unit = self.a().unit();
        (0..d).map(|i| self.l_adj(&sol, &unit, &unit_vector(d, i), xi)).collect()
    }

    /// `S_z^*(sum_i e_i x c_i) = sum_i x_i . c_i`.
    pub fn swan_adjoint(&self, z: &AObj<S, T>, cs: &[Elem<S, T, M>]) -> Result<Elem<S, T, M>> {
        let mut out = self.zero(std::slice::from_ref(z));
        for (i, c) in cs.iter().enumerate() {
            let d = cs.len();
            out = out.add(&self.dot(&self.x(z, &unit_vector(d, i))?, c)?);
        }
        Ok(out)
    }

    /// The range projection `P_z = S_z S_z^*` as a matrix over the algebra:
    /// `P[i][j]` is the `i`-th coefficient of `S_z x_j`.
    pub fn swan_projection(&self, z: &AObj<S, T>) -> Result<Vec<Vec<Elem<S, T, M>>>> {
        let xs = self.x_basis(z)?;
        let cols = xs.iter().map(|x| self.swan(z, x)).collect::<Result<Vec<_>>>()?;
        let d = xs.len();
        Ok((0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect())
    }

    /// Whether `mu~_{zbar,z} mu~^*_{zbar,z} mu(R_z) = mu(R_z)`.
    pub fn free_condition(&self, z: &AObj<S, T>) -> Result<CheckResult> {
        let m = self.m();
        let sol = self.a().solution(z)?;
        let mt = self.mu.mu_tilde(&sol.conj, z)?;
        let r = self.mu.map_arrow(&sol.r)?;
        let lhs = m.compose_all(&[&mt, &m.adjoint(&mt), &r])?;
        Ok(CheckResult::new(
            "mu~ mu~^* mu(R) = mu(R)",
            "free-module-condition",
            self.a().describe(z),
            lhs.approx_eq(&r),
            lhs.residual(&r),
        ))
    }

    /// `P_z = 1` and `P_z^2 = P_z` over the algebra.
    pub fn verify_swan(&self, z: &AObj<S, T>) -> Result<Vec<CheckResult>> {
        let item = self.a().describe(z);
        let p = self.swan_projection(z)?;
        let d = p.len();
        let unit = self.unit()?;
        let zero = self.zero(&[]);
        let mut id_res: f64 = 0.0;
        let mut idem_res: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let e = if i == j { &unit } else { &zero };
                id_res = id_res.max(p[i][j].residual(e));
                let mut acc = zero.clone();
                for k in 0..d {
                    acc = acc.add(&self.dot(&p[i][k], &p[k][j])?);
                }
                idem_res = idem_res.max(acc.residual(&p[i][j]));
            }
        }
        let tol = crate::scalar::eps();
        let idem = CheckResult::new("P^2 = P", "swan-projection", item.clone(), idem_res <= tol, idem_res);
        let ident = CheckResult::new("P = 1", "swan-unitary", item, id_res <= tol, id_res);
        Ok(vec![idem, ident, self.free_condition(z)?])
    }

    /// `<S xi, S xi'> = <xi, xi'>` and `S^*(e_i x 1) = x_i`.
    pub fn verify_swan_isometry(&self, z: &AObj<S, T>, family: &[Elem<S, T, M>]) -> Result<Vec<CheckResult>> {
        let item = self.a().describe(z);
        let mut out = Vec::new();
        let sv = family.iter().map(|x| self.swan(z, x)).collect::<Result<Vec<_>>>()?;
        let mut res: f64 = 0.0;
        for (a, sa) in family.iter().zip(&sv) {
            for (b, sb) in family.iter().zip(&sv) {
                let lhs = sa
                    .iter()
                    .zip(sb)
                    .try_fold(self.zero(&[]), |acc, (ca, cb)| -> Result<_> {
                        Ok(acc.add(&self.dot(&self.star_default(ca)?, cb)?))
                    })?;
                res = res.max(lhs.residual(&self.inner_formula(a, b)?));
            }
        }
        let tol = crate::scalar::eps();
        out.push(CheckResult::new("<S xi, S eta> = <xi, eta>", "swan-isometry", item.clone(), res <= tol, res));
        let d = self.tau.map_obj(z);
        let unit = self.unit()?;
        let mut res2: f64 = 0.0;
        for i in 0..d {
            let mut cs = vec![self.zero(&[]); d];
            cs[i] = unit.clone();
            let lhs = self.swan_adjoint(z, &cs)?;
            res2 = res2.max(lhs.residual(&self.x(z, &unit_vector(d, i))?));
        }
        out.push(CheckResult::new("S^*(e_i x 1) = x_i", "swan-adjoint", item, res2 <= tol, res2));
        Ok(out)
    }

    /// `(tau(A) x 1) S_u = S_u' lambda(mu(A))` on the given elements.
    pub fn verify_naturality(&self, arrow: &Arrow<S, AObj<S, T>>, family: &[Elem<S, T, M>]) -> Result<CheckResult> {
        let a = self.a();
        let ta = self.tau.map_arrow(arrow)?.matrix;
        let ma = self.mu.map_arrow(arrow)?;
        let mut res: f64 = 0.0;
        for xi in family {
            let s = self.swan(&arrow.source, xi)?;
            let rhs = self.swan(&arrow.target, &self.lambda(&ma, xi, std::slice::from_ref(&arrow.target))?)?;
            for (j, r) in rhs.iter().enumerate() {
                let mut acc = self.zero(&[]);
                for (i, c) in s.iter().enumerate() {
                    acc = acc.add(&c.scale(ta.get(j, i)));
                }
                res = res.max(acc.residual(r));
            }
        }
        Ok(CheckResult::new(
            "(tau(A) x 1) S = S lambda(mu(A))",
            "swan-naturality",
            format!("{} -> {}", a.describe(&arrow.source), a.describe(&arrow.target)),
            res <= crate::scalar::eps(),
            res,
        ))
    }

    /// The four identities for `L` and `L^*`, and adjointness of `L^*`.
    ///
    /// `xi` lies over `u`, `eta` over `z x u`; `y` is an arrow `(mu_u, mu_w)`
    /// and `arrow` an arrow `(z, z')` of the source category.
    #[allow(clippy::too_many_arguments)]
    pub fn verify_left_multiplication(
        &self,
        z: &AObj<S, T>,
        u: &AObj<S, T>,
        phi: &[S],
        psi: &[S],
        xi: &Elem<S, T, M>,
        eta: &Elem<S, T, M>,
        y: Option<(&AObj<S, T>, &Arrow<S, MObj<S, M>>)>,
        arrow: Option<&Arrow<S, AObj<S, T>>>,
    ) -> Result<Vec<CheckResult>> {
        let (a, m) = (self.a(), self.m());
        let tol = crate::scalar::eps();
        let item = format!("z = {}, u = {}", a.describe(z), a.describe(u));
        let sol = a.solution(z)?;
        let zu = a.tensor_obj(z, u);
        let mut out = Vec::new();
        let check = |name: &str, tag: &str, l: &Elem<S, T, M>, r: &Elem<S, T, M>| {
            let res = l.residual(r);
            CheckResult::new(name, tag, item.clone(), res <= tol, res)
        };

        if let Some((w, y)) = y {
            let mt = m.compose_all(&[
                &self.mu.mu_tilde(z, w)?,
                &m.tensor(&m.identity(&self.mu.map_obj(z)), y),
                &m.adjoint(&self.mu.mu_tilde(z, u)?),
            ])?;
            let zw = a.tensor_obj(z, w);
            let lhs = self.lambda(&mt, &self.l_op(z, phi, xi)?, &[zw])?;
            let rhs = self.l_op(z, phi, &self.lambda(y, xi, std::slice::from_ref(w))?)?;
            out.push(check("lambda(mu~(1 x Y)mu~^*) L(phi) = L(phi) lambda(Y)", "left-multiplication-a", &lhs, &rhs));
        }

        let lhs = self.l_adj(&sol, u, phi, &self.l_op(z, psi, xi)?)?;
        let ip = psi.iter().zip(phi).fold(S::zero(), |acc, (p, f)| acc + f.conj() * p.clone());
        out.push(check("L(phi)^* L(psi) = <phi, psi>", "left-multiplication-b", &lhs, &xi.scale(&ip)));

        if let Some(arr) = arrow {
            if arr.source != *z {
                return Err(Error::ShapeMismatch("arrow must start at z".into()));
            }
            let z2 = arr.target.clone();
            let z2u = a.tensor_obj(&z2, u);
            let ma = self.mu.map_arrow(&a.tensor(arr, &a.identity(u)))?;
            let lhs = self.lambda(&ma, &self.l_op(z, phi, xi)?, &[z2u])?;
            let tphi = (&self.tau.map_arrow(arr)?.matrix * &crate::matrix::Matrix::col_vec(phi.to_vec())).into_data();
            let rhs = self.l_op(&z2, &tphi, xi)?;
            out.push(check("lambda mu(A x 1) L(phi) = L(tau(A) phi)", "left-multiplication-c", &lhs, &rhs));
        }

        let d = self.tau.map_obj(z);
        let mut lhs = self.zero(&[zu.clone()]);
        for i in 0..d {
            let e = unit_vector(d, i);
            lhs = lhs.add(&self.l_op(z, &e, &self.l_adj(&sol, u, &e, eta)?)?);
        }
        let mt = self.mu.mu_tilde(z, u)?;
        let rhs = self.lambda(&m.compose(&mt, &m.adjoint(&mt))?, eta, &[zu])?;
        out.push(check("sum L(e_i) L(e_i)^* = lambda(mu~ mu~^*)", "left-multiplication-d", &lhs, &rhs));

        // <L(phi) xi', eta> = <xi', L(phi)^* eta> for xi' = xi
        let l = self.inner_formula(&self.l_op(z, phi, xi)?, eta)?;
        let r = self.inner_formula(xi, &self.l_adj(&sol, u, phi, eta)?)?;
        out.push(check("<L(phi) xi, eta> = <xi, L(phi)^* eta>", "left-multiplication-adjoint", &l, &r));
        Ok(out)
    }

    /// `<x_i, c . x_j>` from the closed formula
    /// `(Rhat_u^* (1 x T x 1) mu~^*_{ubar,v,u}) x (j_u e_i x phi x e_j)` for `c = T x phi`.
    pub fn left_action_formula(
        &self,
        u: &AObj<S, T>,
        i: usize,
        j: usize,
        v: &AObj<S, T>,
        t: &Arrow<S, MObj<S, M>>,
        phi: &[S],
    ) -> Result<Elem<S, T, M>> {
        let (a, m) = (self.a(), self.m());
        let sol = a.solution(u)?;
        let hat = crate::quasitensor::image_solution(self.mu.as_ref(), &sol)?;
        let seq = vec![sol.conj.clone(), v.clone(), u.clone()];
        let mt = multi_mu(self.mu.as_ref(), &seq)?;
        let mid = m.tensor_all(&[&m.identity(&hat.conj), t, &m.identity(&hat.object)]);
        let arrow = m.compose_all(&[&m.adjoint(&hat.r), &mid, &m.adjoint(&mt)])?;
        let d = self.tau.map_obj(u);
        let ji = self.j(&sol, &unit_vector(d, i))?;
        let psi = kron(&kron(&ji, phi), &unit_vector(d, j));
        self.raw(&[], &a.tensor_objs(&seq), &arrow, &psi)
    }
}

pub(crate) fn kron<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().flat_map(|x| b.iter().map(move |y| x.clone() * y.clone())).collect()
}
