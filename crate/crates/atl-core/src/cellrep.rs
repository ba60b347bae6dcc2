//! Cell modules and the faithful matrix realization: Gram matrices, action
//! matrices, the determinant identity and the pure-component construction.
//!
//! The module `M_k` is realized directly on the span of standard monic
//! diagrams of `D(k, N)`. A monic composite of `D(k, k)` is a twist power and
//! is identified with the unit monomial `x^r`; at `k = 0` the circle acts by
//! `x + 1/x`. Non-monic composites map to zero (for `k > 0`).

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::algebra::{element_from_factored, AlgebraElement};
use crate::center::p_polynomial_below;
use crate::diagram::{binomial, enumerate_standard, AffineDiagram};
use crate::error::{Error, Result};
use crate::laurent::{CoeffDomain, LaurentPoly};
use crate::matrix::LaurentMatrix;

/// `{t : 0 <= t <= N, t = N mod 2}`, ascending.
pub fn tau_set(n: u32) -> Vec<u32> {
    (n % 2..=n).step_by(2).collect()
}

pub fn check_k(k: u32, n: u32) -> Result<()> {
    if k > n || (n - k) % 2 != 0 {
        return Err(Error::InvalidK {
            k: k as i64,
            n: n as usize,
        });
    }
    Ok(())
}

/// The ordered standard basis of the cell module `M_k`.
#[derive(Clone, Debug)]
pub struct CellBasis {
    pub k: u32,
    pub n: u32,
    pub basis: Vec<AffineDiagram>,
}

impl CellBasis {
    pub fn new(k: u32, n: u32) -> Result<Self> {
        let basis = enumerate_standard(k, n)?;
        debug_assert_eq!(
            basis.len() as u64,
            binomial(n as u64, ((n - k) / 2) as u64)
        );
        Ok(CellBasis { k, n, basis })
    }

    pub fn d_k(&self) -> usize {
        self.basis.len()
    }

    fn index_map(&self) -> HashMap<AffineDiagram, usize> {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, d)| (d.clone(), i))
            .collect()
    }
}

/// The image of a `D(k, k)` composite in the monic span: `delta^loops * x^r`
/// for a monic twist power, `delta^loops * (x + 1/x)^circles` at `k = 0`,
/// zero otherwise.
fn monic_value(k: u32, d: &AffineDiagram, loops: u32, dom: &CoeffDomain) -> Result<LaurentPoly> {
    let delta_pow = LaurentPoly::delta_pow(dom, loops)?;
    if k == 0 {
        let t = LaurentPoly::t_elem(dom).pow(d.circles());
        return delta_pow.mul(&t);
    }
    if !d.is_monic() {
        return Ok(LaurentPoly::zero(dom));
    }
    debug_assert_eq!(d.through_count(), k);
    delta_pow.mul(&LaurentPoly::x_pow(dom, d.total_winding()))
}

/// `R_k = ((beta_j)* beta_s)_{j,s}` over the chosen domain.
pub fn gram_matrix(k: u32, n: u32, dom: &CoeffDomain) -> Result<LaurentMatrix> {
    check_k(k, n)?;
    if *dom == CoeffDomain::LaurentInQ {
        static CACHE: OnceLock<Mutex<HashMap<(u32, u32), LaurentMatrix>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(m) = cache.lock().unwrap().get(&(k, n)) {
            return Ok(m.clone());
        }
        let m = gram_matrix_uncached(k, n, dom)?;
        cache.lock().unwrap().insert((k, n), m.clone());
        return Ok(m);
    }
    gram_matrix_uncached(k, n, dom)
}

fn gram_matrix_uncached(k: u32, n: u32, dom: &CoeffDomain) -> Result<LaurentMatrix> {
    let cb = CellBasis::new(k, n)?;
    let d = cb.d_k();
    let mut rows = Vec::with_capacity(d);
    for j in 0..d {
        let refl = cb.basis[j].reflect();
        let mut row = Vec::with_capacity(d);
        for s in 0..d {
            let comp = refl.compose(&cb.basis[s])?;
            row.push(monic_value(k, &comp.diagram, comp.loops, dom)?);
        }
        rows.push(row);
    }
    LaurentMatrix::from_rows(dom, rows)
}

/// Matrix of the left action of `a` on `M_k` in the standard basis, acting on
/// coordinate columns.
pub fn action_matrix(a: &AlgebraElement, k: u32) -> Result<LaurentMatrix> {
    let n = a.n();
    check_k(k, n)?;
    let dom = a.domain();
    let cb = CellBasis::new(k, n)?;
    let index = cb.index_map();
    let d = cb.d_k();
    let mut out = LaurentMatrix::zero(d, d, &dom);
    for (diag, coeff) in a.terms() {
        for (j, beta) in cb.basis.iter().enumerate() {
            let comp = diag.compose(beta)?;
            let delta_pow = LaurentPoly::delta_pow(&dom, comp.loops)?;
            if k == 0 {
                let circles = comp.diagram.circles();
                let stripped = AffineDiagram::new(
                    comp.diagram.top_count(),
                    comp.diagram.bottom_count(),
                    comp.diagram.arcs().to_vec(),
                    0,
                )?;
                let i = index[&stripped];
                let val = coeff
                    .mul(&delta_pow)?
                    .mul(&LaurentPoly::t_elem(&dom).pow(circles))?;
                *out.at_mut(i, j) = out.at(i, j).add(&val)?;
            } else {
                if !comp.diagram.is_monic() {
                    continue;
                }
                let (std, r) = comp.diagram.standardize()?;
                let i = index[&std];
                let val = coeff
                    .mul(&delta_pow)?
                    .mul(&LaurentPoly::x_pow(&dom, -r))?;
                *out.at_mut(i, j) = out.at(i, j).add(&val)?;
            }
        }
    }
    Ok(out)
}

/// `G_k = prod_{r in T_N, r > k} (x^2 + x^-2 - q^r - q^-r)^{d_r}`, with
/// `G_N = 1`.
pub fn g_polynomial(k: u32, n: u32, dom: &CoeffDomain) -> Result<LaurentPoly> {
    check_k(k, n)?;
    let mut acc = LaurentPoly::one(dom);
    for r in tau_set(n) {
        if r <= k {
            continue;
        }
        let d_r = binomial(n as u64, ((n - r) / 2) as u64) as u32;
        let factor = LaurentPoly::from_int_terms(dom, &[(2, 1), (-2, 1)])
            .sub(&LaurentPoly::q_pow(dom, r as i64)?)?
            .sub(&LaurentPoly::q_pow(dom, -(r as i64))?)?;
        acc = acc.mul(&factor.pow(d_r))?;
    }
    Ok(acc)
}

/// Checks `det R_k = +-G_k` exactly and returns the sign.
pub fn verify_det_identity(k: u32, n: u32, dom: &CoeffDomain) -> Result<i32> {
    if !dom.is_exact() {
        return Err(Error::UnsupportedDomain("complex".into()));
    }
    let det = gram_matrix(k, n, dom)?.laurent_det()?;
    let g = g_polynomial(k, n, dom)?;
    if det == g {
        Ok(1)
    } else if det == g.neg() {
        Ok(-1)
    } else {
        Err(Error::DetIdentityFailed { k: k as i64, n: n as usize })
    }
}

/// Verifies the twist-pushing identity
/// `pi_k(mu tau_r^r nu*) = x^k pi_k(mu nu*)` for standard `mu, nu` over `r`.
pub fn twist_pushing_check(
    mu: &AffineDiagram,
    nu: &AffineDiagram,
    k: u32,
    dom: &CoeffDomain,
) -> Result<bool> {
    let r = mu.bottom_count();
    let full_twist = LaurentPoly::x_pow(dom, r as i64);
    let lhs = element_from_factored(mu, &full_twist, nu)?;
    let rhs = element_from_factored(mu, &LaurentPoly::one(dom), nu)?;
    let lhs_m = action_matrix(&lhs, k)?;
    let rhs_m = action_matrix(&rhs, k)?.scale(&LaurentPoly::x_pow(dom, k as i64))?;
    Ok(lhs_m.eq_eps(&rhs_m))
}

/// Entrywise exact division of a matrix by a polynomial.
fn matrix_exact_div(m: &LaurentMatrix, div: &LaurentPoly) -> Result<LaurentMatrix> {
    let dom = m.domain();
    let mut out = LaurentMatrix::zero(m.rows(), m.cols(), &dom);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            *out.at_mut(i, j) = div.exact_div(m.at(i, j))?;
        }
    }
    Ok(out)
}

/// Builds an element acting as `P_r(x^r) B` on `M_r` (as `P_0(x) B` at
/// `r = 0`) and as zero on every other cell module.
///
/// Follows the inductive ideal construction: the leading term is
/// `sum beta_i P_<r(tau_r^r) C_ij(tau_r) beta_j*` with `C = Q B N_r` and
/// `Q = H_r(x^r)/det R_r`; the residues on lower modules are divided out and
/// cancelled recursively. For even `N >= 2` and `r >= 2` the residue on the
/// zero-sheet module is a nonzero constant matrix at generic `q` and is not
/// divisible by `P_0`; that case returns [`Error::ZeroSheetObstruction`].
pub fn pure_component_element(
    r: u32,
    b: &LaurentMatrix,
    n: u32,
) -> Result<AlgebraElement> {
    check_k(r, n)?;
    let dom = b.domain();
    if !dom.is_exact() {
        return Err(Error::UnsupportedDomain("complex".into()));
    }
    let cb = CellBasis::new(r, n)?;
    let d = cb.d_k();
    if b.rows() != d || b.cols() != d {
        return Err(Error::MatrixShape(format!(
            "expected {d}x{d}, got {}x{}",
            b.rows(),
            b.cols()
        )));
    }
    let gram = gram_matrix(r, n, &dom)?;
    let det = gram.laurent_det()?;
    let adj = gram.adjugate()?;

    if r == 0 {
        for i in 0..d {
            for j in 0..d {
                if !b.at(i, j).is_symmetric() {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        // C = (P_0 / det R_0) B N_0; the ratio is a sign since det R_0 = +-G_0 = +-P_0.
        let p0 = crate::center::p_polynomial(0, n, &dom)?;
        let ratio = det.exact_div(&p0)?;
        let c = b.mul(&adj)?.scale(&ratio)?;
        let mut out = AlgebraElement::zero(n, &dom);
        for i in 0..d {
            for j in 0..d {
                let w = c.at(i, j).to_t_variable()?;
                out = out.add(&element_from_factored(&cb.basis[i], &w, &cb.basis[j])?)?;
            }
        }
        return Ok(out);
    }

    let h_r = crate::center::h_polynomial(r, n, &dom)?;
    let q_poly = det.exact_div(&h_r.substitute_power(r))?;
    let c = b.mul(&adj)?.scale(&q_poly)?;
    let p_below = p_polynomial_below(r, n, &dom)?.substitute_power(r);
    let mut a_r = AlgebraElement::zero(n, &dom);
    for i in 0..d {
        for j in 0..d {
            let poly = p_below.mul(c.at(i, j))?;
            a_r = a_r.add(&element_from_factored(&cb.basis[i], &poly, &cb.basis[j])?)?;
        }
    }

    let mut total = a_r.clone();
    for k in tau_set(n) {
        if k == 0 || k >= r {
            continue;
        }
        let m_k = action_matrix(&a_r, k)?;
        if m_k.is_zero() {
            continue;
        }
        let p_k = crate::center::p_polynomial(k, n, &dom)?.substitute_power(k);
        let d_k = matrix_exact_div(&m_k, &p_k)
            .expect("residue on a positive cell module divides P_k(x^k)");
        total = total.add(&pure_component_element(k, &d_k.neg(), n)?)?;
    }
    if n % 2 == 0 {
        let m_0 = action_matrix(&total, 0)?;
        if !m_0.is_zero() {
            let p_0 = crate::center::p_polynomial(0, n, &dom)?;
            match matrix_exact_div(&m_0, &p_0) {
                Ok(d_0) => total = total.add(&pure_component_element(0, &d_0.neg(), n)?)?,
                Err(_) => return Err(Error::ZeroSheetObstruction),
            }
        }
    }
    Ok(total)
}

/// Returns a `k` with a nonzero action matrix for a nonzero element; the
/// degree of the element always works.
pub fn faithfulness_witness(a: &AlgebraElement) -> Result<u32> {
    let deg = a.degree_data()?.deg;
    let m = action_matrix(a, deg)?;
    assert!(
        !m.is_zero(),
        "principal part must act nontrivially on its own cell module"
    );
    Ok(deg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{Arc, Side};

    fn dom() -> CoeffDomain {
        CoeffDomain::LaurentInQ
    }

    fn x(e: i64) -> LaurentPoly {
        LaurentPoly::x_pow(&dom(), e)
    }

    fn delta() -> LaurentPoly {
        LaurentPoly::delta(&dom()).unwrap()
    }

    #[test]
    fn tau_sets() {
        assert_eq!(tau_set(3), vec![1, 3]);
        assert_eq!(tau_set(2), vec![0, 2]);
        assert_eq!(tau_set(6), vec![0, 2, 4, 6]);
    }

    #[test]
    fn gram_r1_for_tl3_golden_values() {
        let r1 = gram_matrix(1, 3, &dom()).unwrap();
        let expect = LaurentMatrix::from_rows(
            &dom(),
            vec![
                vec![delta(), x(0), x(-1)],
                vec![x(0), delta(), x(1)],
                vec![x(1), x(-1), delta()],
            ],
        )
        .unwrap();
        assert_eq!(r1, expect);
        // top component is the 1x1 identity pairing
        let rn = gram_matrix(3, 3, &dom()).unwrap();
        assert_eq!(rn, LaurentMatrix::identity(1, &dom()));
    }

    #[test]
    fn gram_r0_for_tl2() {
        let r0 = gram_matrix(0, 2, &dom()).unwrap();
        let t = LaurentPoly::t_elem(&dom());
        let expect = LaurentMatrix::from_rows(
            &dom(),
            vec![vec![delta(), t.clone()], vec![t, delta()]],
        )
        .unwrap();
        assert_eq!(r0, expect);
    }

    #[test]
    fn action_of_twist_on_m1() {
        let tau = AlgebraElement::from_diagram(3, &dom(), AffineDiagram::twist(3)).unwrap();
        let m = action_matrix(&tau, 1).unwrap();
        let z = LaurentPoly::zero(&dom());
        let expect = LaurentMatrix::from_rows(
            &dom(),
            vec![
                vec![z.clone(), z.clone(), x(0)],
                vec![x(1), z.clone(), z.clone()],
                vec![z.clone(), x(0), z.clone()],
            ],
        )
        .unwrap();
        assert_eq!(m, expect);
        // and x on the top module
        let m3 = action_matrix(&tau, 3).unwrap();
        assert_eq!(*m3.at(0, 0), x(1));
    }

    #[test]
    fn action_of_cupcap_on_m0() {
        let e = AffineDiagram::new(
            2,
            2,
            vec![
                Arc::cup(Side::Top, 1, 2, false),
                Arc::cup(Side::Bottom, 1, 2, false),
            ],
            0,
        )
        .unwrap();
        let e = AlgebraElement::from_diagram(2, &dom(), e).unwrap();
        let m = action_matrix(&e, 0).unwrap();
        let t = LaurentPoly::t_elem(&dom());
        let z = LaurentPoly::zero(&dom());
        let expect = LaurentMatrix::from_rows(
            &dom(),
            vec![vec![delta(), t], vec![z.clone(), z]],
        )
        .unwrap();
        assert_eq!(m, expect);
    }

    #[test]
    fn action_is_homomorphism_spot() {
        let tau = AlgebraElement::from_diagram(4, &dom(), AffineDiagram::twist(4)).unwrap();
        let prod = tau.multiply(&tau).unwrap();
        for k in tau_set(4) {
            let lhs = action_matrix(&prod, k).unwrap();
            let rhs = action_matrix(&tau, k)
                .unwrap()
                .mul(&action_matrix(&tau, k).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs, "k = {k}");
        }
    }

    #[test]
    fn det_identity_small() {
        assert_eq!(verify_det_identity(3, 3, &dom()).unwrap(), 1);
        assert_eq!(verify_det_identity(1, 3, &dom()).unwrap(), 1);
        assert_eq!(verify_det_identity(0, 2, &dom()).unwrap(), -1);
    }

    #[test]
    fn adjugate_of_gram() {
        for (k, n) in [(1u32, 3u32), (0, 2), (2, 4)] {
            let r = gram_matrix(k, n, &dom()).unwrap();
            let det = r.laurent_det().unwrap();
            let adj = r.adjugate().unwrap();
            let prod = adj.mul(&r).unwrap();
            let expect = LaurentMatrix::identity(r.rows(), &dom())
                .scale(&det)
                .unwrap();
            assert_eq!(prod, expect);
        }
    }

    #[test]
    fn twist_pushing_on_identity_pair() {
        let one3 = AffineDiagram::identity(3);
        assert!(twist_pushing_check(&one3, &one3, 1, &dom()).unwrap());
        assert!(twist_pushing_check(&one3, &one3, 3, &dom()).unwrap());
    }

    #[test]
    fn faithfulness_examples() {
        let tau = AlgebraElement::from_diagram(3, &dom(), AffineDiagram::twist(3)).unwrap();
        let a = tau.sub(&AlgebraElement::one(3, &dom())).unwrap();
        assert_eq!(faithfulness_witness(&a).unwrap(), 3);
        let m = action_matrix(&a, 3).unwrap();
        assert_eq!(*m.at(0, 0), x(1).sub(&x(0)).unwrap());

        let e = AffineDiagram::new(
            2,
            2,
            vec![
                Arc::cup(Side::Top, 1, 2, false),
                Arc::cup(Side::Bottom, 1, 2, false),
            ],
            0,
        )
        .unwrap();
        let e = AlgebraElement::from_diagram(2, &dom(), e).unwrap();
        assert_eq!(faithfulness_witness(&e).unwrap(), 0);
        assert_eq!(
            faithfulness_witness(&AlgebraElement::one(4, &dom())).unwrap(),
            4
        );
    }
}
