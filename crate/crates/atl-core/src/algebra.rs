//! The algebra `T_N(delta)`: finite linear combinations of `D(N,N)` diagrams
//! with scalar coefficients, multiplied with one factor of `delta` per removed
//! contractible loop.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::diagram::{AffineDiagram, ComposeResult};
use crate::error::{Error, Result};
use crate::laurent::{CoeffDomain, LaurentPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    n: u32,
    domain: CoeffDomain,
    terms: BTreeMap<AffineDiagram, LaurentPoly>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeData {
    pub deg: u32,
    pub principal_part: AlgebraElement,
}

impl AlgebraElement {
    pub fn zero(n: u32, dom: &CoeffDomain) -> Self {
        AlgebraElement {
            n,
            domain: *dom,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: u32, dom: &CoeffDomain) -> Self {
        Self::from_diagram(n, dom, AffineDiagram::identity(n)).expect("identity diagram")
    }

    pub fn from_diagram(n: u32, dom: &CoeffDomain, d: AffineDiagram) -> Result<Self> {
        let mut e = Self::zero(n, dom);
        e.add_term(d, LaurentPoly::one(dom))?;
        Ok(e)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffineDiagram, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Adds `coeff * d`; coefficients live in the scalar ring (constant in x).
    pub fn add_term(&mut self, d: AffineDiagram, coeff: LaurentPoly) -> Result<()> {
        if d.top_count() != self.n || d.bottom_count() != self.n {
            return Err(Error::ArityMismatch {
                bottom: d.bottom_count() as usize,
                top: d.top_count() as usize,
            });
        }
        if coeff.domain() != self.domain {
            return Err(Error::DomainMismatch(
                self.domain.name().into(),
                coeff.domain().name().into(),
            ));
        }
        if !coeff.is_zero() && coeff.min_max_deg()? != (0, 0) {
            return Err(Error::NonConstantCoefficient);
        }
        match self.terms.remove(&d) {
            None => {
                if !coeff.is_zero() {
                    self.terms.insert(d, coeff);
                }
            }
            Some(old) => {
                let s = old.add(&coeff)?;
                if !s.is_zero() {
                    self.terms.insert(d, s);
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(d.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn scale(&self, s: &LaurentPoly) -> Result<Self> {
        let mut out = Self::zero(self.n, &self.domain);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c.mul(s)?)?;
        }
        Ok(out)
    }

    fn check_compatible(&self, rhs: &Self) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::ArityMismatch {
                bottom: self.n as usize,
                top: rhs.n as usize,
            });
        }
        if self.domain != rhs.domain {
            return Err(Error::DomainMismatch(
                self.domain.name().into(),
                rhs.domain.name().into(),
            ));
        }
        Ok(())
    }

    /// Bilinear product; each diagram pair contributes `delta^loops` times the
    /// composed diagram.
    pub fn multiply(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        let delta = LaurentPoly::delta(&self.domain)?;
        let mut out = Self::zero(self.n, &self.domain);
        for (d1, c1) in &self.terms {
            for (d2, c2) in &rhs.terms {
                let ComposeResult { diagram, loops } = d1.compose(d2)?;
                let coeff = c1.mul(c2)?.mul(&delta.pow(loops))?;
                out.add_term(diagram, coeff)?;
            }
        }
        Ok(out)
    }

    /// Termwise reflection; an anti-automorphism.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(self.n, &self.domain);
        for (d, c) in &self.terms {
            out.add_term(d.reflect(), c.clone()).expect("same arity");
        }
        out
    }

    /// Maximal through-arc count and the part of the element realizing it.
    pub fn degree_data(&self) -> Result<DegreeData> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let deg = self
            .terms
            .keys()
            .map(AffineDiagram::through_count)
            .max()
            .unwrap();
        let mut principal = Self::zero(self.n, &self.domain);
        for (d, c) in &self.terms {
            if d.through_count() == deg {
                principal.add_term(d.clone(), c.clone())?;
            }
        }
        Ok(DegreeData {
            deg,
            principal_part: principal,
        })
    }

    /// Membership in the filtration ideal `I^k_N` of elements of degree <= k.
    pub fn in_filtration_ideal(&self, k: u32) -> Result<bool> {
        if k > self.n || (self.n - k) % 2 != 0 {
            return Err(Error::InvalidK {
                k: k as i64,
                n: self.n as usize,
            });
        }
        if self.is_zero() {
            return Ok(true);
        }
        Ok(self.degree_data()?.deg <= k)
    }

    pub fn eq_eps(&self, rhs: &Self) -> bool {
        if self.n != rhs.n || self.terms.len() != rhs.terms.len() {
            return false;
        }
        self.terms
            .iter()
            .zip(&rhs.terms)
            .all(|((d1, c1), (d2, c2))| d1 == d2 && c1.eq_eps(c2))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "N": self.n,
            "terms": self
                .terms
                .iter()
                .map(|(d, c)| json!({"diagram": d.to_json(), "coeff": c.to_json()}))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value, dom: &CoeffDomain) -> Result<Self> {
        let n = v
            .get("N")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("element needs \"N\"".into()))? as u32;
        let mut out = Self::zero(n, dom);
        for t in v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("element needs \"terms\"".into()))?
        {
            let d = AffineDiagram::from_json(
                t.get("diagram")
                    .ok_or_else(|| Error::Parse("term needs \"diagram\"".into()))?,
            )?;
            let c = LaurentPoly::from_json(
                t.get("coeff")
                    .ok_or_else(|| Error::Parse("term needs \"coeff\"".into()))?,
                dom,
            )?;
            out.add_term(d, c)?;
        }
        Ok(out)
    }
}

/// Fan-Green subalgebra membership test for a single diagram: the unity, or a
/// non-monic diagram of even rank.
pub fn in_fan_green_subalgebra(d: &AffineDiagram) -> bool {
    (d.top_count() >= 1 && *d == AffineDiagram::identity(d.top_count()))
        || (!d.is_monic() && d.rank() % 2 == 0)
}

/// `sum_e coeff(p, e) * (mu . twist^e . nu*)`.
///
/// `mu` and `nu` must be standard diagrams over the same number of through
/// arcs `k`; at `k = 0` only nonnegative exponents are defined.
pub fn element_from_factored(
    mu: &AffineDiagram,
    p: &LaurentPoly,
    nu: &AffineDiagram,
) -> Result<AlgebraElement> {
    if !mu.is_standard() || !nu.is_standard() || mu.bottom_count() != nu.bottom_count() {
        return Err(Error::InvalidDiagram(
            "factors must be standard diagrams over the same strand count".into(),
        ));
    }
    if mu.top_count() != nu.top_count() {
        return Err(Error::ArityMismatch {
            bottom: mu.top_count() as usize,
            top: nu.top_count() as usize,
        });
    }
    let k = mu.bottom_count();
    let n = mu.top_count();
    let dom = p.domain();
    let nu_star = nu.reflect();
    let mut out = AlgebraElement::zero(n, &dom);
    if p.is_zero() {
        return Ok(out);
    }
    let (lo, hi) = p.min_max_deg()?;
    if k == 0 && lo < 0 {
        return Err(Error::NegativeExponentAtKZero(lo));
    }
    for e in lo..=hi {
        let coeff = coeff_at(p, e)?;
        if coeff.is_zero() {
            continue;
        }
        let mid = AffineDiagram::twist_power(k, e)?;
        let d = mu
            .compose(&mid)?
            .diagram
            .compose(&nu_star)?;
        debug_assert_eq!(d.loops, 0);
        out.add_term(d.diagram, coeff)?;
    }
    Ok(out)
}

/// The coefficient of `x^e` as a scalar (x-constant) polynomial.
pub fn coeff_at(p: &LaurentPoly, e: i64) -> Result<LaurentPoly> {
    use crate::poly::Poly;
    Ok(match p {
        LaurentPoly::Rational(q) => LaurentPoly::Rational(Poly::constant(q.coeff(e))),
        LaurentPoly::LaurentInQ(q) => LaurentPoly::LaurentInQ(Poly::constant(q.coeff(e))),
        LaurentPoly::Complex { p: q, q: qv, tol } => LaurentPoly::Complex {
            p: Poly::constant(q.coeff(e)),
            q: *qv,
            tol: *tol,
        },
    })
}
