//! The public Laurent-polynomial type, tagged by coefficient domain.
//!
//! Three coefficient domains are supported: plain rationals, Laurent
//! polynomials in `q` over the rationals (the symbolic mode; the loop
//! parameter is always the embedded element `-q - 1/q`), and complex floating
//! point with a zero-test tolerance (the numeric mode, which also carries the
//! chosen value of `q`).

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::poly::{CoeffRing, Poly, QPoly};
use crate::rat::Rat;

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CoeffDomain {
    Rational,
    LaurentInQ,
    Complex { q: Complex64, tol: f64 },
}

impl CoeffDomain {
    pub fn complex(q: Complex64, tol: f64) -> Result<Self> {
        if q.norm() == 0.0 {
            return Err(Error::Parse("q must be nonzero".into()));
        }
        if tol <= 0.0 || tol.is_nan() {
            return Err(Error::Parse("tolerance must be positive".into()));
        }
        Ok(CoeffDomain::Complex { q, tol })
    }

    pub fn name(&self) -> &'static str {
        match self {
            CoeffDomain::Rational => "rational",
            CoeffDomain::LaurentInQ => "laurent-in-q",
            CoeffDomain::Complex { .. } => "complex",
        }
    }

    pub fn eps(&self) -> f64 {
        match self {
            CoeffDomain::Complex { tol, .. } => *tol,
            _ => 0.0,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, CoeffDomain::Complex { .. })
    }

    fn mismatch(&self, other: &CoeffDomain) -> Error {
        Error::DomainMismatch(self.name().into(), other.name().into())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LaurentPoly {
    Rational(Poly<Rat>),
    LaurentInQ(Poly<QPoly>),
    Complex {
        p: Poly<Complex64>,
        q: Complex64,
        tol: f64,
    },
}

impl LaurentPoly {
    pub fn domain(&self) -> CoeffDomain {
        match self {
            LaurentPoly::Rational(_) => CoeffDomain::Rational,
            LaurentPoly::LaurentInQ(_) => CoeffDomain::LaurentInQ,
            LaurentPoly::Complex { q, tol, .. } => CoeffDomain::Complex { q: *q, tol: *tol },
        }
    }

    pub fn zero(dom: &CoeffDomain) -> Self {
        match dom {
            CoeffDomain::Rational => LaurentPoly::Rational(Poly::zero()),
            CoeffDomain::LaurentInQ => LaurentPoly::LaurentInQ(Poly::zero()),
            CoeffDomain::Complex { q, tol } => LaurentPoly::Complex {
                p: Poly::zero(),
                q: *q,
                tol: *tol,
            },
        }
    }

    pub fn one(dom: &CoeffDomain) -> Self {
        Self::x_pow(dom, 0)
    }

    /// The unit monomial `x^e`.
    pub fn x_pow(dom: &CoeffDomain, e: i64) -> Self {
        match dom {
            CoeffDomain::Rational => LaurentPoly::Rational(Poly::monomial(Rat::ONE, e)),
            CoeffDomain::LaurentInQ => LaurentPoly::LaurentInQ(Poly::monomial(QPoly::one(), e)),
            CoeffDomain::Complex { q, tol } => LaurentPoly::Complex {
                p: Poly::monomial(Complex64::new(1.0, 0.0), e),
                q: *q,
                tol: *tol,
            },
        }
    }

    /// Polynomial with rational coefficients embedded into the domain.
    pub fn from_rat_terms(dom: &CoeffDomain, terms: &[(i64, Rat)]) -> Self {
        match dom {
            CoeffDomain::Rational => {
                LaurentPoly::Rational(Poly::from_terms(terms, 0.0))
            }
            CoeffDomain::LaurentInQ => LaurentPoly::LaurentInQ(Poly::from_terms(
                &terms
                    .iter()
                    .map(|(e, c)| (*e, QPoly::constant(c.clone())))
                    .collect::<Vec<_>>(),
                0.0,
            )),
            CoeffDomain::Complex { q, tol } => LaurentPoly::Complex {
                p: Poly::from_terms(
                    &terms
                        .iter()
                        .map(|(e, c)| (*e, Complex64::new(c.to_f64(), 0.0)))
                        .collect::<Vec<_>>(),
                    *tol,
                ),
                q: *q,
                tol: *tol,
            },
        }
    }

    pub fn from_int_terms(dom: &CoeffDomain, terms: &[(i64, i64)]) -> Self {
        Self::from_rat_terms(
            dom,
            &terms
                .iter()
                .map(|(e, c)| (*e, Rat::from_i64(*c)))
                .collect::<Vec<_>>(),
        )
    }

    /// The constant `q^e` (an element of the coefficient ring).
    pub fn q_pow(dom: &CoeffDomain, e: i64) -> Result<Self> {
        match dom {
            CoeffDomain::Rational => Err(Error::UnsupportedDomain("rational".into())),
            CoeffDomain::LaurentInQ => Ok(LaurentPoly::LaurentInQ(Poly::constant(
                QPoly::monomial(Rat::ONE, e),
            ))),
            CoeffDomain::Complex { q, tol } => Ok(LaurentPoly::Complex {
                p: Poly::constant(q.powi(e as i32)),
                q: *q,
                tol: *tol,
            }),
        }
    }

    /// The loop parameter `delta = -q - 1/q` as a constant.
    pub fn delta(dom: &CoeffDomain) -> Result<Self> {
        Ok(Self::q_pow(dom, 1)?.add(&Self::q_pow(dom, -1)?)?.neg())
    }

    pub fn delta_pow(dom: &CoeffDomain, n: u32) -> Result<Self> {
        Ok(Self::delta(dom)?.pow(n))
    }

    /// `x + 1/x`, the value of the noncontractible circle in the 0-sheet module.
    pub fn t_elem(dom: &CoeffDomain) -> Self {
        Self::from_int_terms(dom, &[(1, 1), (-1, 1)])
    }

    pub fn is_zero(&self) -> bool {
        match self {
            LaurentPoly::Rational(p) => p.is_zero(),
            LaurentPoly::LaurentInQ(p) => p.is_zero(),
            LaurentPoly::Complex { p, .. } => p.is_zero(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (LaurentPoly::Rational(a), LaurentPoly::Rational(b)) => {
                Ok(LaurentPoly::Rational(a.add(b, 0.0)))
            }
            (LaurentPoly::LaurentInQ(a), LaurentPoly::LaurentInQ(b)) => {
                Ok(LaurentPoly::LaurentInQ(a.add(b, 0.0)))
            }
            (LaurentPoly::Complex { p: a, q, tol }, LaurentPoly::Complex { p: b, .. })
                if self.domain() == rhs.domain() =>
            {
                Ok(LaurentPoly::Complex {
                    p: a.add(b, *tol),
                    q: *q,
                    tol: *tol,
                })
            }
            _ => Err(self.domain().mismatch(&rhs.domain())),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            LaurentPoly::Rational(p) => LaurentPoly::Rational(p.neg()),
            LaurentPoly::LaurentInQ(p) => LaurentPoly::LaurentInQ(p.neg()),
            LaurentPoly::Complex { p, q, tol } => LaurentPoly::Complex {
                p: p.neg(),
                q: *q,
                tol: *tol,
            },
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (LaurentPoly::Rational(a), LaurentPoly::Rational(b)) => {
                Ok(LaurentPoly::Rational(a.mul(b, 0.0)))
            }
            (LaurentPoly::LaurentInQ(a), LaurentPoly::LaurentInQ(b)) => {
                Ok(LaurentPoly::LaurentInQ(a.mul(b, 0.0)))
            }
            (LaurentPoly::Complex { p: a, q, tol }, LaurentPoly::Complex { p: b, .. })
                if self.domain() == rhs.domain() =>
            {
                Ok(LaurentPoly::Complex {
                    p: a.mul(b, *tol),
                    q: *q,
                    tol: *tol,
                })
            }
            _ => Err(self.domain().mismatch(&rhs.domain())),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.domain());
        for _ in 0..n {
            acc = acc.mul(self).expect("same domain");
        }
        acc
    }

    /// Multiplication by the unit monomial `x^e`.
    pub fn shift(&self, e: i64) -> Self {
        match self {
            LaurentPoly::Rational(p) => LaurentPoly::Rational(p.shift(e)),
            LaurentPoly::LaurentInQ(p) => LaurentPoly::LaurentInQ(p.shift(e)),
            LaurentPoly::Complex { p, q, tol } => LaurentPoly::Complex {
                p: p.shift(e),
                q: *q,
                tol: *tol,
            },
        }
    }

    pub fn min_max_deg(&self) -> Result<(i64, i64)> {
        let r = match self {
            LaurentPoly::Rational(p) => p.min_deg().zip(p.max_deg()),
            LaurentPoly::LaurentInQ(p) => p.min_deg().zip(p.max_deg()),
            LaurentPoly::Complex { p, .. } => p.min_deg().zip(p.max_deg()),
        };
        r.ok_or(Error::ZeroPolynomial)
    }

    /// `p(x^k)`.
    pub fn substitute_power(&self, k: u32) -> Self {
        assert!(k >= 1, "substitute_power needs k >= 1");
        match self {
            LaurentPoly::Rational(p) => LaurentPoly::Rational(p.substitute_power(k)),
            LaurentPoly::LaurentInQ(p) => LaurentPoly::LaurentInQ(p.substitute_power(k)),
            LaurentPoly::Complex { p, q, tol } => LaurentPoly::Complex {
                p: p.substitute_power(k),
                q: *q,
                tol: *tol,
            },
        }
    }

    pub fn divides(&self, p: &Self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.try_exact_div(p)?.is_some())
    }

    fn try_exact_div(&self, p: &Self) -> Result<Option<Self>> {
        match (self, p) {
            (LaurentPoly::Rational(d), LaurentPoly::Rational(n)) => {
                Ok(n.exact_div(d, 0.0).map(LaurentPoly::Rational))
            }
            (LaurentPoly::LaurentInQ(d), LaurentPoly::LaurentInQ(n)) => {
                Ok(n.exact_div(d, 0.0).map(LaurentPoly::LaurentInQ))
            }
            (LaurentPoly::Complex { p: d, q, tol }, LaurentPoly::Complex { p: n, .. })
                if self.domain() == p.domain() =>
            {
                Ok(n.exact_div(d, *tol).map(|r| LaurentPoly::Complex {
                    p: r,
                    q: *q,
                    tol: *tol,
                }))
            }
            _ => Err(self.domain().mismatch(&p.domain())),
        }
    }

    /// The quotient `p / self`; errors when `p` is not a multiple.
    pub fn exact_div(&self, p: &Self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        self.try_exact_div(p)?.ok_or_else(|| {
            Error::NotDivisible(p.fmt_with_var("x"), self.fmt_with_var("x"))
        })
    }

    pub fn is_symmetric(&self) -> bool {
        match self {
            LaurentPoly::Rational(p) => p.is_symmetric(0.0),
            LaurentPoly::LaurentInQ(p) => p.is_symmetric(0.0),
            LaurentPoly::Complex { p, tol, .. } => p.is_symmetric(*tol),
        }
    }

    /// The unique `W` with `W(x + 1/x) = self`.
    pub fn to_t_variable(&self) -> Result<Self> {
        let r = match self {
            LaurentPoly::Rational(p) => p.to_t_variable(0.0).map(LaurentPoly::Rational),
            LaurentPoly::LaurentInQ(p) => p.to_t_variable(0.0).map(LaurentPoly::LaurentInQ),
            LaurentPoly::Complex { p, q, tol } => {
                p.to_t_variable(*tol).map(|r| LaurentPoly::Complex {
                    p: r,
                    q: *q,
                    tol: *tol,
                })
            }
        };
        r.ok_or(Error::NotSymmetric)
    }

    /// `self(v)` for a polynomial with nonnegative exponents.
    pub fn substitute(&self, v: &Self) -> Result<Self> {
        if self.min_max_deg().map(|(lo, _)| lo < 0).unwrap_or(false) {
            return Err(Error::NegativeExponentAtKZero(self.min_max_deg()?.0));
        }
        match (self, v) {
            (LaurentPoly::Rational(a), LaurentPoly::Rational(b)) => Ok(LaurentPoly::Rational(
                a.substitute_poly(b, 0.0).expect("nonnegative exponents"),
            )),
            (LaurentPoly::LaurentInQ(a), LaurentPoly::LaurentInQ(b)) => {
                Ok(LaurentPoly::LaurentInQ(
                    a.substitute_poly(b, 0.0).expect("nonnegative exponents"),
                ))
            }
            (LaurentPoly::Complex { p: a, q, tol }, LaurentPoly::Complex { p: b, .. })
                if self.domain() == v.domain() =>
            {
                Ok(LaurentPoly::Complex {
                    p: a.substitute_poly(b, *tol).expect("nonnegative exponents"),
                    q: *q,
                    tol: *tol,
                })
            }
            _ => Err(self.domain().mismatch(&v.domain())),
        }
    }

    pub fn eval_complex(&self, z: Complex64, q_value: Option<Complex64>) -> Result<Complex64> {
        if z.norm() == 0.0 {
            return Err(Error::ZeroEvaluationPoint);
        }
        match self {
            LaurentPoly::Rational(p) => Ok(p.eval_map(z, |c| Complex64::new(c.to_f64(), 0.0))),
            LaurentPoly::LaurentInQ(p) => {
                let q = q_value.ok_or(Error::MissingQ)?;
                if q.norm() == 0.0 {
                    return Err(Error::ZeroEvaluationPoint);
                }
                Ok(p.eval_map(z, |c| c.eval_map(q, |r| Complex64::new(r.to_f64(), 0.0))))
            }
            LaurentPoly::Complex { p, .. } => Ok(p.eval_map(z, |c| *c)),
        }
    }

    /// Structural equality for exact domains, tolerance comparison otherwise.
    pub fn eq_eps(&self, rhs: &Self) -> bool {
        match (self, rhs) {
            (LaurentPoly::Complex { tol, .. }, LaurentPoly::Complex { .. }) => self
                .sub(rhs)
                .map(|d| match d {
                    LaurentPoly::Complex { p, .. } => {
                        p.terms().all(|(_, c)| c.is_zero_eps(*tol))
                    }
                    _ => unreachable!(),
                })
                .unwrap_or(false),
            _ => self == rhs,
        }
    }

    pub fn num_terms(&self) -> usize {
        match self {
            LaurentPoly::Rational(p) => p.num_terms(),
            LaurentPoly::LaurentInQ(p) => p.num_terms(),
            LaurentPoly::Complex { p, .. } => p.num_terms(),
        }
    }

    pub fn fmt_with_var(&self, var: &str) -> String {
        match self {
            LaurentPoly::Rational(p) => p.fmt_with_var(var),
            LaurentPoly::LaurentInQ(p) => p.fmt_with_var(var),
            LaurentPoly::Complex { p, .. } => p.fmt_with_var(var),
        }
    }

    pub fn to_json(&self) -> Value {
        self.to_json_with_var("x")
    }

    fn to_json_with_var(&self, var: &str) -> Value {
        let mut coeffs = Map::new();
        match self {
            LaurentPoly::Rational(p) => {
                for (e, c) in p.terms() {
                    coeffs.insert(e.to_string(), Value::String(c.to_string()));
                }
            }
            LaurentPoly::LaurentInQ(p) => {
                for (e, c) in p.terms() {
                    let mut qc = Map::new();
                    for (qe, r) in c.terms() {
                        qc.insert(qe.to_string(), Value::String(r.to_string()));
                    }
                    coeffs.insert(
                        e.to_string(),
                        json!({"var": "q", "coeffs": Value::Object(qc)}),
                    );
                }
            }
            LaurentPoly::Complex { p, .. } => {
                for (e, c) in p.terms() {
                    coeffs.insert(e.to_string(), json!([c.re, c.im]));
                }
            }
        }
        json!({"var": var, "coeffs": Value::Object(coeffs)})
    }

    pub fn from_json(v: &Value, dom: &CoeffDomain) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("polynomial must be an object".into()))?;
        let coeffs = obj
            .get("coeffs")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("polynomial needs a \"coeffs\" object".into()))?;
        let mut out = Self::zero(dom);
        for (es, cv) in coeffs {
            let e: i64 = es
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent {es:?}")))?;
            let term = match (dom, cv) {
                (CoeffDomain::Rational, Value::String(s)) => {
                    LaurentPoly::Rational(Poly::monomial(Rat::parse(s)?, e))
                }
                (CoeffDomain::LaurentInQ, Value::String(s)) => LaurentPoly::LaurentInQ(
                    Poly::monomial(QPoly::constant(Rat::parse(s)?), e),
                ),
                (CoeffDomain::LaurentInQ, Value::Object(_)) => {
                    let inner = Self::from_json(cv, &CoeffDomain::Rational)?;
                    let qp = match inner {
                        LaurentPoly::Rational(p) => p,
                        _ => unreachable!(),
                    };
                    LaurentPoly::LaurentInQ(Poly::monomial(qp, e))
                }
                (CoeffDomain::Complex { q, tol }, v) => {
                    let c = parse_complex_value(v)?;
                    LaurentPoly::Complex {
                        p: Poly::monomial(c, e),
                        q: *q,
                        tol: *tol,
                    }
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "coefficient {cv} not valid in {} domain",
                        dom.name()
                    )))
                }
            };
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

fn parse_complex_value(v: &Value) -> Result<Complex64> {
    match v {
        Value::String(s) => Ok(Complex64::new(Rat::parse(s)?.to_f64(), 0.0)),
        Value::Array(a) if a.len() == 2 => {
            let re = a[0]
                .as_f64()
                .ok_or_else(|| Error::Parse("bad complex coefficient".into()))?;
            let im = a[1]
                .as_f64()
                .ok_or_else(|| Error::Parse("bad complex coefficient".into()))?;
            Ok(Complex64::new(re, im))
        }
        _ => Err(Error::Parse(format!("bad complex coefficient {v}"))),
    }
}

impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.fmt_with_var("x"))
    }
}
