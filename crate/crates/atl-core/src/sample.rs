//! Deterministic random samplers over diagrams and algebra elements, shared by
//! the property suites and the CLI self-test.
//!
//! Sampling goes through the `mu . twist^r . nu*` normal form, which reaches
//! every diagram class.

use crate::algebra::AlgebraElement;
use crate::diagram::{enumerate_standard, AffineDiagram};
use crate::error::Result;
use crate::laurent::{CoeffDomain, LaurentPoly};
use crate::rat::Rat;
use crate::rng::Rng;

/// A random diagram of `D(m, n)` with `|exponent| <= wind`.
pub fn random_diagram(rng: &mut Rng, m: u32, n: u32, wind: i64) -> AffineDiagram {
    assert_eq!((m + n) % 2, 0, "arity parity");
    let t_choices: Vec<u32> = (n.min(m) % 2..=n.min(m)).step_by(2).collect();
    let t = t_choices[rng.below(t_choices.len() as u64) as usize];
    let mus = enumerate_standard(t, n).expect("valid arity");
    let nus = enumerate_standard(t, m).expect("valid arity");
    let mu = &mus[rng.below(mus.len() as u64) as usize];
    let nu = &nus[rng.below(nus.len() as u64) as usize];
    let r = if t == 0 {
        rng.range_i64(0, wind.max(0))
    } else {
        rng.range_i64(-wind, wind)
    };
    let mid = AffineDiagram::twist_power(t, r).expect("nonnegative at t = 0");
    mu.compose(&mid)
        .and_then(|c| c.diagram.compose(&nu.reflect()))
        .expect("matching arities")
        .diagram
}

/// A random element of `T_N` with `terms` diagram summands and small
/// rational-in-q coefficients.
pub fn random_element(
    rng: &mut Rng,
    n: u32,
    terms: usize,
    wind: i64,
    dom: &CoeffDomain,
) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero(n, dom);
    for _ in 0..terms {
        let d = random_diagram(rng, n, n, wind);
        let c = random_scalar(rng, dom)?;
        out.add_term(d, c)?;
    }
    Ok(out)
}

/// A random nonzero scalar (constant in x).
pub fn random_scalar(rng: &mut Rng, dom: &CoeffDomain) -> Result<LaurentPoly> {
    let num = rng.range_i64(1, 5) * if rng.below(2) == 0 { 1 } else { -1 };
    let base = LaurentPoly::from_rat_terms(dom, &[(0, Rat::from_i64(num))]);
    if *dom == CoeffDomain::LaurentInQ && rng.below(2) == 0 {
        let e = rng.range_i64(-2, 2);
        return base.mul(&LaurentPoly::q_pow(dom, e)?);
    }
    Ok(base)
}

/// A random Laurent polynomial in x with integer coefficients.
pub fn random_poly(rng: &mut Rng, dom: &CoeffDomain, span: i64, terms: usize) -> LaurentPoly {
    let mut p = LaurentPoly::zero(dom);
    for _ in 0..terms {
        let e = rng.range_i64(-span, span);
        let c = rng.range_i64(-4, 4);
        p = p
            .add(&LaurentPoly::from_int_terms(dom, &[(e, c)]))
            .expect("same domain");
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_diagrams_are_valid() {
        let mut rng = Rng::new(1);
        for _ in 0..200 {
            let d = random_diagram(&mut rng, 3, 3, 3);
            assert_eq!(d.top_count(), 3);
            assert_eq!(d.bottom_count(), 3);
            // round-trips through the validating constructor
            let rebuilt = AffineDiagram::new(
                d.top_count(),
                d.bottom_count(),
                d.arcs().to_vec(),
                d.circles(),
            )
            .unwrap();
            assert_eq!(rebuilt, d);
        }
    }

    #[test]
    fn sampler_reaches_mixed_arities() {
        let mut rng = Rng::new(2);
        let d = random_diagram(&mut rng, 2, 4, 2);
        assert_eq!(d.top_count(), 4);
        assert_eq!(d.bottom_count(), 2);
    }
}
