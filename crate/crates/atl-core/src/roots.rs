//! Complex root finding for Laurent polynomials: clear the unit monomial,
//! build the companion matrix and take its eigenvalues by shifted Hessenberg
//! QR iteration, then polish with a few Newton steps.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// All roots (in `C^x`, with multiplicity) of a complex-domain Laurent
/// polynomial.
pub fn laurent_roots(p: &LaurentPoly, tol: f64) -> Result<Vec<Complex64>> {
    let (lo, hi) = p.min_max_deg()?;
    let deg = (hi - lo) as usize;
    if deg == 0 {
        return Ok(vec![]);
    }
    // Cleared polynomial coefficients c_0..c_deg with c_0, c_deg nonzero.
    let coeffs: Vec<Complex64> = (lo..=hi).map(|e| complex_coeff(p, e)).collect();
    let lead = coeffs[deg];
    let monic: Vec<Complex64> = coeffs[..deg].iter().map(|c| c / lead).collect();
    let mut h = vec![vec![Complex64::new(0.0, 0.0); deg]; deg];
    for i in 1..deg {
        h[i][i - 1] = Complex64::new(1.0, 0.0);
    }
    for i in 0..deg {
        h[i][deg - 1] = -monic[i];
    }
    let mut roots = hessenberg_eigenvalues(h)?;
    for r in &mut roots {
        *r = newton_polish(p, *r, tol);
    }
    Ok(roots)
}

fn complex_coeff(p: &LaurentPoly, e: i64) -> Complex64 {
    match p {
        LaurentPoly::Complex { p, .. } => p.coeff(e),
        LaurentPoly::Rational(r) => Complex64::new(r.coeff(e).to_f64(), 0.0),
        LaurentPoly::LaurentInQ(_) => {
            unreachable!("root finding requires numeric coefficients")
        }
    }
}

fn newton_polish(p: &LaurentPoly, mut z: Complex64, tol: f64) -> Complex64 {
    for _ in 0..4 {
        if z.norm() < tol {
            break;
        }
        let (Ok(v), Ok(d)) = (p.eval_complex(z, None), eval_derivative(p, z)) else {
            break;
        };
        if d.norm() < 1e-300 {
            break;
        }
        let step = v / d;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        z -= step;
    }
    z
}

fn eval_derivative(p: &LaurentPoly, z: Complex64) -> Result<Complex64> {
    let (lo, hi) = p.min_max_deg()?;
    let mut acc = Complex64::new(0.0, 0.0);
    for e in lo..=hi {
        let c = complex_coeff(p, e);
        if c.norm() == 0.0 {
            continue;
        }
        acc += c * (e as f64) * z.powi(e as i32 - 1);
    }
    Ok(acc)
}

/// Eigenvalues of an upper Hessenberg matrix by single-shift QR with Givens
/// rotations and trailing deflation.
fn hessenberg_eigenvalues(mut h: Vec<Vec<Complex64>>) -> Result<Vec<Complex64>> {
    let full = h.len();
    let mut eigs = Vec::with_capacity(full);
    let mut n = full;
    let mut stalls = 0usize;
    let mut total = 0usize;
    let limit = 200 * full.max(1);
    while n > 0 {
        if n == 1 {
            eigs.push(h[0][0]);
            break;
        }
        // deflate interior zeros as well as the trailing one
        let mut deflated = false;
        for i in (1..n).rev() {
            let small = 1e-14 * (h[i - 1][i - 1].norm() + h[i][i].norm() + 1e-300);
            if h[i][i - 1].norm() <= small && i == n - 1 {
                eigs.push(h[n - 1][n - 1]);
                n -= 1;
                stalls = 0;
                deflated = true;
                break;
            }
        }
        if deflated {
            continue;
        }
        total += 1;
        if total > limit {
            return Err(Error::Parse(
                "eigenvalue iteration did not converge".into(),
            ));
        }
        // Wilkinson shift from the trailing 2x2 block
        let a = h[n - 2][n - 2];
        let b = h[n - 2][n - 1];
        let c = h[n - 1][n - 2];
        let d = h[n - 1][n - 1];
        let mut shift = {
            let tr_half = (a - d) * 0.5;
            let disc = (tr_half * tr_half + b * c).sqrt();
            let l1 = d + tr_half - disc;
            let l2 = d + tr_half + disc;
            if (l1 - d).norm() <= (l2 - d).norm() {
                l1
            } else {
                l2
            }
        };
        stalls += 1;
        if stalls % 12 == 0 {
            // exceptional shift to break symmetric stalls
            shift = d + Complex64::new(1.0, 0.5) * h[n - 1][n - 2].norm();
        }
        for i in 0..n {
            h[i][i] -= shift;
        }
        // QR by Givens, then RQ
        let mut rots: Vec<(f64, Complex64)> = Vec::with_capacity(n - 1);
        for i in 0..n - 1 {
            let f = h[i][i];
            let g = h[i + 1][i];
            let (cc, ss) = givens(f, g);
            rots.push((cc, ss));
            for j in i..n {
                let top = h[i][j];
                let bot = h[i + 1][j];
                h[i][j] = cc * top + ss * bot;
                h[i + 1][j] = -ss.conj() * top + cc * bot;
            }
        }
        for (i, (cc, ss)) in rots.iter().enumerate() {
            for r in 0..(i + 2).min(n) {
                let left = h[r][i];
                let right = h[r][i + 1];
                h[r][i] = *cc * left + ss.conj() * right;
                h[r][i + 1] = -*ss * left + *cc * right;
            }
        }
        for i in 0..n {
            h[i][i] += shift;
        }
    }
    Ok(eigs)
}

/// Complex Givens rotation with real cosine: `[[c, s], [-conj(s), c]]`
/// sends `(f, g)` to `(r, 0)`.
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    let fn2 = f.norm_sqr();
    let gn2 = g.norm_sqr();
    if gn2 == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if fn2 == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let r = (fn2 + gn2).sqrt();
    let c = fn2.sqrt() / r;
    let s = (f / fn2.sqrt()) * g.conj() / r;
    (c, s)
}

/// Root clusters of `p` with their multiplicities, each representative
/// re-polished by multiplicity-aware Newton (`z -= m p/p'`), which converges
/// quadratically at multiple roots.
pub fn clustered_roots(p: &LaurentPoly, tol: f64) -> Result<Vec<(Complex64, usize)>> {
    let raw = laurent_roots(p, tol)?;
    let mut clusters = dedup_roots(&raw, tol.max(1e-12) * 100.0);
    for (z, m) in &mut clusters {
        for _ in 0..4 {
            let (Ok(v), Ok(d)) = (p.eval_complex(*z, None), eval_derivative(p, *z)) else {
                break;
            };
            if d.norm() < 1e-300 {
                break;
            }
            let step = v / d * (*m as f64);
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            *z -= step;
        }
    }
    Ok(clusters)
}

/// Clusters numerically equal values; returns representatives with counts.
pub fn dedup_roots(roots: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    for &r in roots {
        if let Some((rep, count)) = out
            .iter_mut()
            .find(|(rep, _)| (*rep - r).norm() <= tol * (1.0 + rep.norm()))
        {
            let n = *count as f64;
            *rep = (*rep * n + r) / (n + 1.0);
            *count += 1;
        } else {
            out.push((r, 1));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::CoeffDomain;

    fn numdom() -> CoeffDomain {
        CoeffDomain::complex(Complex64::new(4.0, 0.0), 1e-9).unwrap()
    }

    #[test]
    fn roots_of_unity() {
        // x^6 - 1
        let p = LaurentPoly::from_int_terms(&numdom(), &[(6, 1), (0, -1)]);
        let mut roots = laurent_roots(&p, 1e-9).unwrap();
        assert_eq!(roots.len(), 6);
        roots.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
        for r in &roots {
            assert!((r.norm() - 1.0).abs() < 1e-9);
            assert!((r.powi(6) - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn laurent_clearing_finds_reciprocal_pairs() {
        // x^2 + x^-2 - (q^3 + q^-3) at q = 4: roots z with z^2 in {64, 1/64}
        let q = Complex64::new(4.0, 0.0);
        let c = q.powi(3) + q.powi(-3);
        let dom = numdom();
        let p = LaurentPoly::from_int_terms(&dom, &[(2, 1), (-2, 1)])
            .sub(&LaurentPoly::from_rat_terms(&dom, &[]).add(&scale(&dom, c)).unwrap())
            .unwrap();
        let roots = laurent_roots(&p, 1e-9).unwrap();
        assert_eq!(roots.len(), 4);
        for r in roots {
            let z2 = r * r;
            assert!(
                (z2 - Complex64::new(64.0, 0.0)).norm() < 1e-6
                    || (z2 - Complex64::new(1.0 / 64.0, 0.0)).norm() < 1e-9,
                "z^2 = {z2}"
            );
        }
    }

    fn scale(dom: &CoeffDomain, c: Complex64) -> LaurentPoly {
        match dom {
            CoeffDomain::Complex { q, tol } => LaurentPoly::Complex {
                p: crate::poly::Poly::constant(c),
                q: *q,
                tol: *tol,
            },
            _ => unreachable!(),
        }
    }

    #[test]
    fn repeated_roots_cluster() {
        // (x - 1)^3 (x + 2)
        let dom = numdom();
        let a = LaurentPoly::from_int_terms(&dom, &[(1, 1), (0, -1)]);
        let b = LaurentPoly::from_int_terms(&dom, &[(1, 1), (0, 2)]);
        let p = a.pow(3).mul(&b).unwrap();
        let roots = laurent_roots(&p, 1e-9).unwrap();
        let clusters = dedup_roots(&roots, 1e-4);
        assert_eq!(clusters.len(), 2);
        let triple = clusters.iter().find(|(_, c)| *c == 3).unwrap();
        assert!((triple.0 - Complex64::new(1.0, 0.0)).norm() < 1e-4);
    }
}
