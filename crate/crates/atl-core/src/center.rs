//! Center geometry: the polynomials `H_k` and `P_k`, finite generator sets of
//! the principal ideals, sheet evaluations, and the complete description of
//! the center of `T_3` with its gluing points.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::algebra::{element_from_factored, AlgebraElement};
use crate::cellrep::{check_k, g_polynomial, tau_set};
use crate::diagram::{binomial, enumerate_standard, AffineDiagram};
use crate::error::{Error, Result};
use crate::laurent::{CoeffDomain, LaurentPoly};
use crate::matrix::LaurentMatrix;
use crate::roots::{clustered_roots, dedup_roots};

/// A point on the sheet `S_k`: the punctured plane for `k > 0`, the plane for
/// `k = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SheetPoint {
    pub k: u32,
    pub z: Complex64,
}

impl SheetPoint {
    pub fn new(k: u32, z: Complex64) -> Result<Self> {
        if k > 0 && z.norm() == 0.0 {
            return Err(Error::ZeroEvaluationPoint);
        }
        Ok(SheetPoint { k, z })
    }

    pub fn to_json(&self) -> Value {
        json!({"k": self.k, "z": [self.z.re, self.z.im]})
    }
}

/// A tuple of Laurent polynomials indexed by the admissible `k`, the shape of
/// a central element in the matrix realization.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralTuple {
    n: u32,
    comps: Vec<LaurentPoly>,
}

impl CentralTuple {
    pub fn new(n: u32, comps: Vec<LaurentPoly>) -> Result<Self> {
        if comps.len() != tau_set(n).len() {
            return Err(Error::MatrixShape(format!(
                "expected {} components for N = {n}",
                tau_set(n).len()
            )));
        }
        Ok(CentralTuple { n, comps })
    }

    pub fn component(&self, k: u32) -> Result<&LaurentPoly> {
        let pos = tau_set(self.n)
            .iter()
            .position(|&t| t == k)
            .ok_or(Error::InvalidK {
                k: k as i64,
                n: self.n as usize,
            })?;
        Ok(&self.comps[pos])
    }

    /// A pure tuple: `g` in component `k`, zero elsewhere.
    pub fn pure(n: u32, k: u32, g: LaurentPoly) -> Result<Self> {
        check_k(k, n)?;
        let dom = g.domain();
        let comps = tau_set(n)
            .into_iter()
            .map(|t| if t == k { g.clone() } else { LaurentPoly::zero(&dom) })
            .collect();
        Self::new(n, comps)
    }

    /// The central tuple `(x^k)_k`, the image of the full twist.
    pub fn sheet_coordinate(n: u32, dom: &CoeffDomain) -> Self {
        let comps = tau_set(n)
            .into_iter()
            .map(|t| LaurentPoly::x_pow(dom, t as i64))
            .collect();
        CentralTuple { n, comps }
    }
}

/// `H_k`: the minimal-degree Laurent polynomial with `H_k(x^k)` divisible by
/// `G_k(x)`, centered; `H_0 = G_0`.
///
/// In the symbolic domain `q` is treated as generic (no coincidences among its
/// powers); numeric mode deduplicates the pushed-forward roots within the
/// tolerance, so special values of `q` produce genuinely smaller `H_k`.
pub fn h_polynomial(k: u32, n: u32, dom: &CoeffDomain) -> Result<LaurentPoly> {
    check_k(k, n)?;
    if k == 0 {
        return g_polynomial(0, n, dom);
    }
    let h = match dom {
        CoeffDomain::Rational => return Err(Error::UnsupportedDomain("rational".into())),
        CoeffDomain::LaurentInQ => {
            let mut acc = LaurentPoly::one(dom);
            for r in tau_set(n) {
                if r <= k {
                    continue;
                }
                let d_r = binomial(n as u64, ((n - r) / 2) as u64) as u32;
                let rk = (r as i64) * (k as i64);
                let factor = if k % 2 == 1 {
                    // (y^2 - q^{rk})(y^2 - q^{-rk}) centered
                    LaurentPoly::from_int_terms(dom, &[(2, 1), (-2, 1)])
                        .sub(&LaurentPoly::q_pow(dom, rk)?)?
                        .sub(&LaurentPoly::q_pow(dom, -rk)?)?
                } else {
                    // (y - q^{rk/2})(y - q^{-rk/2}) centered
                    LaurentPoly::from_int_terms(dom, &[(1, 1), (-1, 1)])
                        .sub(&LaurentPoly::q_pow(dom, rk / 2)?)?
                        .sub(&LaurentPoly::q_pow(dom, -rk / 2)?)?
                };
                acc = acc.mul(&factor.pow(d_r))?;
            }
            acc
        }
        CoeffDomain::Complex { q, tol } => {
            let mut acc = LaurentPoly::one(dom);
            for (v, m) in h_root_data(k, n, *q, *tol) {
                let lin = LaurentPoly::x_pow(dom, 1).sub(&complex_const(dom, v))?;
                acc = acc.mul(&lin.pow(m as u32))?;
            }
            // center: balance min and max degrees by a unit monomial
            if !acc.is_zero() {
                let (lo, hi) = acc.min_max_deg()?;
                acc = acc.shift(-(lo + hi).div_euclid(2));
            }
            acc
        }
    };
    // Divisibility guarantee: G_k | H_k(x^k).
    let g = g_polynomial(k, n, dom)?;
    g.exact_div(&h.substitute_power(k))?;
    Ok(h)
}

/// Distinct roots of `H_k` with multiplicities in the numeric mode.
///
/// The roots of `G_k` are `+-q^{r/2}` and `+-q^{-r/2}` with order `d_r`;
/// coinciding roots of different factors merge (their orders add) at special
/// `q`, and the pushforward through `x -> x^k` keeps the largest preimage
/// order. At `k = 0` the unpushed roots of `G_0` are returned.
fn h_root_data(k: u32, n: u32, q: Complex64, tol: f64) -> Vec<(Complex64, usize)> {
    let mut roots: Vec<(Complex64, usize)> = Vec::new();
    for r in tau_set(n) {
        if r <= k {
            continue;
        }
        let d_r = binomial(n as u64, ((n - r) / 2) as u64) as usize;
        for half in [q.powf(r as f64 / 2.0), q.powf(-(r as f64) / 2.0)] {
            for root in [half, -half] {
                match roots
                    .iter_mut()
                    .find(|(v, _)| (*v - root).norm() <= tol * (1.0 + v.norm()))
                {
                    Some((_, m)) => *m += d_r,
                    None => roots.push((root, d_r)),
                }
            }
        }
    }
    if k == 0 {
        return roots;
    }
    let mut pushed: Vec<(Complex64, usize)> = Vec::new();
    for (root, mult) in roots {
        let image = root.powi(k as i32);
        match pushed
            .iter_mut()
            .find(|(v, _)| (*v - image).norm() <= tol * (1.0 + v.norm()))
        {
            Some((_, m)) => *m = (*m).max(mult),
            None => pushed.push((image, mult)),
        }
    }
    pushed
}

fn complex_const(dom: &CoeffDomain, c: Complex64) -> LaurentPoly {
    match dom {
        CoeffDomain::Complex { q, tol } => LaurentPoly::Complex {
            p: crate::poly::Poly::constant(c),
            q: *q,
            tol: *tol,
        },
        _ => unreachable!(),
    }
}

/// `P_k = prod_{r <= k} H_r`.
pub fn p_polynomial(k: u32, n: u32, dom: &CoeffDomain) -> Result<LaurentPoly> {
    check_k(k, n)?;
    let mut acc = LaurentPoly::one(dom);
    for r in tau_set(n) {
        if r <= k {
            acc = acc.mul(&h_polynomial(r, n, dom)?)?;
        }
    }
    Ok(acc)
}

/// `prod_{r < k} H_r`; the empty product for the smallest admissible `k`.
pub fn p_polynomial_below(k: u32, n: u32, dom: &CoeffDomain) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::one(dom);
    for r in tau_set(n) {
        if r < k {
            acc = acc.mul(&h_polynomial(r, n, dom)?)?;
        }
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealRing {
    /// Ordinary polynomials (used on the symmetrized zero sheet).
    Poly,
    /// Laurent polynomials.
    Laurent,
}

/// A finite set generating the principal ideal `P * ring` as an algebra.
///
/// The Laurent case extends the exponent range until the family has balanced
/// minimal and maximal degrees with both extremes witnessed away from each
/// other, which is what the closed-image argument needs.
pub fn ideal_generators(p: &LaurentPoly, ring: IdealRing) -> Result<Vec<LaurentPoly>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let dom = p.domain();
    let (lo, hi) = p.min_max_deg()?;
    match ring {
        IdealRing::Poly => {
            debug_assert!(lo >= 0, "polynomial-ring generators need a polynomial");
            let n = hi;
            if n == 0 {
                return Ok(vec![
                    LaurentPoly::one(&dom),
                    LaurentPoly::x_pow(&dom, 1),
                ]);
            }
            Ok((0..n).map(|j| p.shift(j)).collect())
        }
        IdealRing::Laurent => {
            let span = hi - lo;
            if span == 0 {
                // unit: the whole ring, generated by x and 1/x
                return Ok(vec![
                    LaurentPoly::x_pow(&dom, 1),
                    LaurentPoly::x_pow(&dom, -1),
                ]);
            }
            if span == 1 {
                // x + alpha up to a unit: generators x + alpha and 1/alpha + 1/x
                let c_lo = crate::algebra::coeff_at(p, lo)?;
                let c_hi = crate::algebra::coeff_at(p, hi)?;
                let alpha = c_hi.exact_div(&c_lo)?;
                let alpha_inv = c_lo.exact_div(&c_hi)?;
                let g1 = LaurentPoly::x_pow(&dom, 1).add(&alpha)?;
                let g2 = LaurentPoly::x_pow(&dom, -1).add(&alpha_inv)?;
                return Ok(vec![g1, g2]);
            }
            // normalize so that mindeg <= -1 and maxdeg >= 1
            let shift = if lo >= 0 {
                -1 - lo
            } else if hi <= 0 {
                1 - hi
            } else {
                0
            };
            let p = p.shift(shift);
            let (lo, hi) = p.min_max_deg()?;
            let (m, n) = (-lo, hi);
            let bound = (2 * m).max(2 * n - 1);
            Ok((m - bound..=bound - n).map(|j| p.shift(j)).collect())
        }
    }
}

/// Evaluation of a central tuple at a sheet point: `f_k(z)` for `k > 0`, and
/// `f_0(t)` with `t + 1/t = z` for `k = 0` (well defined for symmetric `f_0`).
pub fn psi_evaluate(
    f: &CentralTuple,
    p: &SheetPoint,
    q_value: Option<Complex64>,
) -> Result<Complex64> {
    let comp = f.component(p.k)?;
    if p.k > 0 {
        return comp.eval_complex(p.z, q_value);
    }
    if !comp.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    // either root of t + 1/t = z works on a symmetric component; take the
    // larger one to dodge cancellation
    let half = p.z * 0.5;
    let s = (half * half - 1.0).sqrt();
    let t = if (half + s).norm() >= (half - s).norm() {
        half + s
    } else {
        half - s
    };
    comp.eval_complex(t, q_value)
}

/// The center of `T_3` as pairs `(S, T)`: membership means
/// `S(x) - T(x^3)` is divisible by `x^2 + x^-2 + delta`.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterElementTl3 {
    pub s: LaurentPoly,
    pub t: LaurentPoly,
}

impl CenterElementTl3 {
    pub fn new(s: LaurentPoly, t: LaurentPoly) -> Result<Self> {
        if !is_central_tl3(&s, &t)? {
            return Err(Error::NotDivisible(
                "S(x) - T(x^3)".into(),
                "x^2 + x^-2 + delta".into(),
            ));
        }
        Ok(CenterElementTl3 { s, t })
    }
}

/// `x^2 + x^-2 + delta` over the domain of its arguments.
pub fn tl3_divisor(dom: &CoeffDomain) -> Result<LaurentPoly> {
    LaurentPoly::from_int_terms(dom, &[(2, 1), (-2, 1)]).add(&LaurentPoly::delta(dom)?)
}

pub fn is_central_tl3(s: &LaurentPoly, t: &LaurentPoly) -> Result<bool> {
    let divisor = tl3_divisor(&s.domain())?;
    divisor.divides(&s.sub(&t.substitute_power(3))?)
}

/// Decomposition `P(x) = P0(x^3) + x P1(x^3) + x^-1 P2(x^3)` and the matrix
/// `[[P0, P2/x, P1], [x P1, P0, P2], [P2, P1, P0]]` realizing multiplication
/// by `P(tau_3)` on the three-strand cell module.
pub fn hat_matrix(p: &LaurentPoly) -> Result<LaurentMatrix> {
    let dom = p.domain();
    let mut parts = [
        LaurentPoly::zero(&dom),
        LaurentPoly::zero(&dom),
        LaurentPoly::zero(&dom),
    ];
    if !p.is_zero() {
        let (lo, hi) = p.min_max_deg()?;
        for e in lo..=hi {
            let c = crate::algebra::coeff_at(p, e)?;
            if c.is_zero() {
                continue;
            }
            let (slot, y_exp) = match e.rem_euclid(3) {
                0 => (0, e / 3),
                1 => (1, (e - 1) / 3),
                _ => (2, (e + 1) / 3),
            };
            parts[slot] = parts[slot].add(&c.shift(y_exp))?;
        }
    }
    let [p0, p1, p2] = parts;
    LaurentMatrix::from_rows(
        &dom,
        vec![
            vec![p0.clone(), p2.shift(-1), p1.clone()],
            vec![p1.shift(1), p0.clone(), p2.clone()],
            vec![p2, p1, p0],
        ],
    )
}

/// The central element of `T_3` with matrix image `(S(x), T(x) Id)` built from
/// `S` and a witness `V` with `T(x^3) = S(x) + V(x) (x^2 + x^-2 + delta)`.
pub fn tl3_central_element(s: &LaurentPoly, v: &LaurentPoly) -> Result<AlgebraElement> {
    let dom = s.domain();
    let one3 = AffineDiagram::identity(3);
    let mut out = element_from_factored(&one3, s, &one3)?;
    let hat_v = hat_matrix(v)?;
    let basis = enumerate_standard(1, 3)?;
    for i in 0..3 {
        for j in 0..3 {
            if hat_v.at(i, j).is_zero() {
                continue;
            }
            out = out.add(&element_from_factored(&basis[i], hat_v.at(i, j), &basis[j])?)?;
        }
    }
    debug_assert_eq!(out.domain(), dom);
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct GluingReport {
    pub n: u32,
    pub q: Complex64,
    pub component_count: u32,
    pub candidates: Vec<(SheetPoint, SheetPoint)>,
    /// `None` outside `N = 3`, where only the necessary conditions are known.
    pub confirmed: Option<Vec<(SheetPoint, SheetPoint)>>,
}

impl GluingReport {
    pub fn to_json(&self) -> Value {
        let pair = |(a, b): &(SheetPoint, SheetPoint)| {
            json!({"from": a.to_json(), "to": b.to_json()})
        };
        json!({
            "N": self.n,
            "q": [self.q.re, self.q.im],
            "components": self.component_count,
            "candidates": self.candidates.iter().map(pair).collect::<Vec<_>>(),
            "confirmed": self
                .confirmed
                .as_ref()
                .map(|v| v.iter().map(pair).collect::<Vec<_>>()),
        })
    }
}

/// Sheet points where the pure ideal vanishes, per component: the candidate
/// locus for identifications.
///
/// The roots of `P_k(x^k)` are found on its square-free part, assembled from
/// the known distinct roots of the `H_r` factors; with only simple roots the
/// companion-matrix solve reaches full precision even where `P_k` has
/// multiple roots.
fn sheet_root_points(n: u32, dom: &CoeffDomain, tol: f64) -> Result<Vec<SheetPoint>> {
    let CoeffDomain::Complex { q, .. } = dom else {
        return Err(Error::UnsupportedDomain(dom.name().into()));
    };
    let mut out = Vec::new();
    for k in tau_set(n) {
        // distinct values of the roots of P_k = prod_{r <= k} H_r
        let mut values: Vec<Complex64> = Vec::new();
        for r in tau_set(n) {
            if r > k {
                continue;
            }
            for (v, _) in h_root_data(r, n, *q, tol) {
                if !values.iter().any(|w| (w - v).norm() <= tol * (1.0 + w.norm())) {
                    values.push(v);
                }
            }
        }
        if k > 0 {
            // square-free polynomial with roots {x : x^k = v}
            let mut sf = LaurentPoly::one(dom);
            for v in &values {
                sf = sf.mul(
                    &LaurentPoly::x_pow(dom, k as i64).sub(&complex_const(dom, *v))?,
                )?;
            }
            if sf.min_max_deg().map(|(lo, hi)| lo == hi).unwrap_or(true) {
                continue; // no roots on this sheet
            }
            for (z, _) in clustered_roots(&sf, tol)? {
                out.push(SheetPoint::new(k, z)?);
            }
        } else {
            // distinct images t + 1/t (reciprocal roots collide)
            let mut zs: Vec<Complex64> = Vec::new();
            for t in &values {
                let z = t + 1.0 / t;
                if !zs.iter().any(|w| (w - z).norm() <= tol * (1.0 + w.norm())) {
                    zs.push(z);
                }
            }
            for z in zs {
                out.push(SheetPoint::new(0, z)?);
            }
        }
    }
    Ok(out)
}

/// All pairs of sheet points satisfying the necessary identification
/// conditions: both lie over roots of their pure ideals and `x^k = y^m`.
pub fn candidate_gluings(
    n: u32,
    q: Complex64,
    tol: f64,
) -> Result<Vec<(SheetPoint, SheetPoint)>> {
    let dom = CoeffDomain::complex(q, tol)?;
    let pts = sheet_root_points(n, &dom, tol)?;
    let mut pairs = Vec::new();
    for (i, a) in pts.iter().enumerate() {
        for b in pts.iter().skip(i + 1) {
            if a.k == b.k && (a.z - b.z).norm() <= tol * (1.0 + a.z.norm()) {
                continue; // the same variety point, not an identification
            }
            let va = a.z.powi(a.k as i32);
            let vb = b.z.powi(b.k as i32);
            if (va - vb).norm() <= tol * (1.0 + va.norm().max(vb.norm())) {
                pairs.push((*a, *b));
            }
        }
    }
    Ok(pairs)
}

/// The proved `T_3` identifications: `z` with `z^2 + z^-2 + delta = 0` glued
/// to `w = z^3`, duplicates merged within tolerance. When `q^6 = 1` some of
/// the four points coincide and fewer pairs are reported.
pub fn confirmed_gluings_tl3(q: Complex64, tol: f64) -> Result<GluingReport> {
    if q.norm() == 0.0 {
        return Err(Error::ZeroEvaluationPoint);
    }
    let sq = q.sqrt();
    let mut zs = vec![sq, -sq, 1.0 / sq, -(1.0 / sq)];
    zs = dedup_roots(&zs, tol).into_iter().map(|(z, _)| z).collect();
    let mut confirmed = Vec::new();
    for z in zs {
        let pair = (SheetPoint::new(3, z)?, SheetPoint::new(1, z.powi(3))?);
        let dup = confirmed.iter().any(|(a, b): &(SheetPoint, SheetPoint)| {
            (a.z - pair.0.z).norm() <= tol * (1.0 + a.z.norm())
                && (b.z - pair.1.z).norm() <= tol * (1.0 + b.z.norm())
        });
        if !dup {
            confirmed.push(pair);
        }
    }
    let candidates = candidate_gluings(3, q, tol)?;
    Ok(GluingReport {
        n: 3,
        q,
        component_count: 2,
        candidates,
        confirmed: Some(confirmed),
    })
}

/// Candidate-only report for general `N`; confirmed pairs are attached for
/// `N = 3` where the full answer is known.
pub fn gluing_report(n: u32, q: Complex64, tol: f64) -> Result<GluingReport> {
    if n == 3 {
        return confirmed_gluings_tl3(q, tol);
    }
    Ok(GluingReport {
        n,
        q,
        component_count: n / 2 + 1,
        candidates: candidate_gluings(n, q, tol)?,
        confirmed: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietySummary {
    pub n: u32,
    pub component_count: u32,
    pub sheets: Vec<u32>,
}

impl VarietySummary {
    /// Where the sheet union maps bijectively onto the variety.
    pub fn injectivity_domain(&self) -> String {
        "each sheet minus the roots of P_k(x^k) (of P_0(t) with t + 1/t = z on the zero sheet)"
            .to_string()
    }
}

/// Irreducible-component census of the center variety.
pub fn variety_summary(n: u32) -> VarietySummary {
    VarietySummary {
        n,
        component_count: n / 2 + 1,
        sheets: tau_set(n),
    }
}

/// Pure tuples over the ideal generators of every component, a separating
/// family for sheet points away from the roots.
pub fn central_ideal_generator_tuples(n: u32, dom: &CoeffDomain) -> Result<Vec<CentralTuple>> {
    let mut out = Vec::new();
    for k in tau_set(n) {
        let p_k = p_polynomial(k, n, dom)?;
        if k > 0 {
            for g in ideal_generators(&p_k.substitute_power(k), IdealRing::Laurent)? {
                out.push(CentralTuple::pure(n, k, g)?);
            }
        } else {
            // generators (x + 1/x)^j P_0 on the symmetrized zero sheet
            let w = p_k.to_t_variable()?;
            for g in ideal_generators(&w, IdealRing::Poly)? {
                out.push(CentralTuple::pure(n, 0, substitute_t(&g)?)?);
            }
        }
    }
    out.push(CentralTuple::sheet_coordinate(n, dom));
    Ok(out)
}

/// Substitutes `t = x + 1/x` into a polynomial with nonnegative exponents.
fn substitute_t(w: &LaurentPoly) -> Result<LaurentPoly> {
    let dom = w.domain();
    let t = LaurentPoly::t_elem(&dom);
    let mut acc = LaurentPoly::zero(&dom);
    if w.is_zero() {
        return Ok(acc);
    }
    let (lo, hi) = w.min_max_deg()?;
    debug_assert!(lo >= 0);
    for e in lo..=hi {
        let c = crate::algebra::coeff_at(w, e)?;
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&t.pow(e as u32).mul(&c)?)?;
    }
    Ok(acc)
}
