//! Dense Laurent polynomials in one variable over a pluggable coefficient ring.
//!
//! `Poly<C>` stores coefficients for the exponent range `min .. min + c.len()`.
//! The zero polynomial is the empty vector. Operations take an `eps` used only
//! by approximate coefficient rings (complex numbers) to drop negligible
//! coefficients; exact rings ignore it.

use num_complex::Complex64;

use crate::rat::Rat;

pub trait CoeffRing: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn is_zero_eps(&self, eps: f64) -> bool;
    /// Exact division; `None` when `self` is not a multiple of `d`.
    fn exact_div(&self, d: &Self, eps: f64) -> Option<Self>
    where
        Self: Sized;
    fn coeff_string(&self) -> String;
    /// `acc += a * b`, overridable to avoid temporaries in convolutions.
    fn mul_acc(acc: &mut Self, a: &Self, b: &Self)
    where
        Self: Sized,
    {
        *acc = acc.add(&a.mul(b));
    }
}

impl CoeffRing for Rat {
    fn zero() -> Self {
        Rat::ZERO
    }
    fn one() -> Self {
        Rat::ONE
    }
    fn add(&self, rhs: &Self) -> Self {
        Rat::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rat::sub(self, rhs)
    }
    fn neg(&self) -> Self {
        Rat::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rat::mul(self, rhs)
    }
    fn is_zero_eps(&self, _eps: f64) -> bool {
        self.is_zero()
    }
    fn exact_div(&self, d: &Self, _eps: f64) -> Option<Self> {
        self.div(d).ok()
    }
    fn coeff_string(&self) -> String {
        self.to_string()
    }
}

impl CoeffRing for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn is_zero_eps(&self, eps: f64) -> bool {
        self.norm() <= eps
    }
    fn exact_div(&self, d: &Self, eps: f64) -> Option<Self> {
        if d.is_zero_eps(eps) {
            None
        } else {
            Some(self / d)
        }
    }
    fn coeff_string(&self) -> String {
        if self.im == 0.0 {
            format!("{}", self.re)
        } else {
            format!("{}{:+}i", self.re, self.im)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C: CoeffRing> {
    min: i64,
    c: Vec<C>,
}

impl<C: CoeffRing> Poly<C> {
    pub fn zero() -> Self {
        Poly { min: 0, c: vec![] }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn monomial(c: C, e: i64) -> Self {
        let mut p = Poly { min: e, c: vec![c] };
        p.trim(0.0);
        p
    }

    /// Builds from `(exponent, coefficient)` pairs, summing duplicates.
    pub fn from_terms(terms: &[(i64, C)], eps: f64) -> Self {
        let mut p = Poly::zero();
        for (e, c) in terms {
            p = p.add(&Poly::monomial(c.clone(), *e), eps);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn min_deg(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min)
        }
    }

    pub fn max_deg(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min + self.c.len() as i64 - 1)
        }
    }

    pub fn coeff(&self, e: i64) -> C {
        if self.is_zero() || e < self.min || e >= self.min + self.c.len() as i64 {
            C::zero()
        } else {
            self.c[(e - self.min) as usize].clone()
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        let min = self.min;
        self.c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero_eps(0.0))
            .map(move |(i, c)| (min + i as i64, c))
    }

    pub fn num_terms(&self) -> usize {
        self.c.iter().filter(|c| !c.is_zero_eps(0.0)).count()
    }

    /// Grows the dense buffer to cover `lo..=hi`, keeping stored values.
    fn reserve_range(&mut self, lo: i64, hi: i64) {
        if self.c.is_empty() {
            self.min = lo;
            self.c = vec![C::zero(); (hi - lo + 1) as usize];
            return;
        }
        let cur_lo = self.min;
        let cur_hi = self.min + self.c.len() as i64 - 1;
        let new_lo = cur_lo.min(lo);
        let new_hi = cur_hi.max(hi);
        if new_lo == cur_lo && new_hi == cur_hi {
            return;
        }
        let mut c = vec![C::zero(); (new_hi - new_lo + 1) as usize];
        for (i, v) in self.c.drain(..).enumerate() {
            c[(cur_lo - new_lo) as usize + i] = v;
        }
        self.min = new_lo;
        self.c = c;
    }

    fn trim(&mut self, eps: f64) {
        while let Some(last) = self.c.last() {
            if last.is_zero_eps(eps) {
                self.c.pop();
            } else {
                break;
            }
        }
        let lead_zeros = self.c.iter().take_while(|c| c.is_zero_eps(eps)).count();
        if lead_zeros > 0 {
            self.c.drain(..lead_zeros);
            self.min += lead_zeros as i64;
        }
        if self.c.is_empty() {
            self.min = 0;
        }
    }

    pub fn add(&self, rhs: &Self, eps: f64) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let min = self.min.min(rhs.min);
        let max = (self.min + self.c.len() as i64).max(rhs.min + rhs.c.len() as i64);
        let mut c = vec![C::zero(); (max - min) as usize];
        for (i, v) in self.c.iter().enumerate() {
            c[(self.min - min) as usize + i] = v.clone();
        }
        for (i, v) in rhs.c.iter().enumerate() {
            let k = (rhs.min - min) as usize + i;
            c[k] = c[k].add(v);
        }
        let mut p = Poly { min, c };
        p.trim(eps);
        p
    }

    pub fn sub(&self, rhs: &Self, eps: f64) -> Self {
        self.add(&rhs.neg(), eps)
    }

    pub fn neg(&self) -> Self {
        Poly {
            min: self.min,
            c: self.c.iter().map(|v| v.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self, eps: f64) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let (a, b) = if self.c.len() <= rhs.c.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut c = vec![C::zero(); a.c.len() + b.c.len() - 1];
        for (i, ai) in a.c.iter().enumerate() {
            if ai.is_zero_eps(0.0) {
                continue;
            }
            for (j, bj) in b.c.iter().enumerate() {
                if bj.is_zero_eps(0.0) {
                    continue;
                }
                C::mul_acc(&mut c[i + j], ai, bj);
            }
        }
        let mut p = Poly {
            min: a.min + b.min,
            c,
        };
        p.trim(eps);
        p
    }

    pub fn mul_scalar(&self, s: &C, eps: f64) -> Self {
        let mut p = Poly {
            min: self.min,
            c: self.c.iter().map(|v| v.mul(s)).collect(),
        };
        p.trim(eps);
        p
    }

    /// Multiplication by the unit monomial `x^e`.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        Poly {
            min: self.min + e,
            c: self.c.clone(),
        }
    }

    pub fn pow(&self, n: u32, eps: f64) -> Self {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = acc.mul(self, eps);
        }
        acc
    }

    /// `p(x^k)`: every exponent is multiplied by `k`.
    pub fn substitute_power(&self, k: u32) -> Self {
        assert!(k >= 1);
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let k = k as i64;
        let mut c = vec![C::zero(); (self.c.len() - 1) * k as usize + 1];
        for (i, v) in self.c.iter().enumerate() {
            c[i * k as usize] = v.clone();
        }
        Poly { min: self.min * k, c }
    }

    /// Long division of Laurent polynomials. Returns `None` when not divisible.
    pub fn exact_div(&self, d: &Self, eps: f64) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let n = self.c.len();
        let m = d.c.len();
        if n < m {
            return None;
        }
        let mut rem = self.c.clone();
        let mut q = vec![C::zero(); n - m + 1];
        for i in (0..=n - m).rev() {
            let lead = rem[i + m - 1].clone();
            if lead.is_zero_eps(eps) {
                continue;
            }
            let qc = lead.exact_div(&d.c[m - 1], eps)?;
            for (j, dj) in d.c.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&qc.mul(dj));
            }
            q[i] = qc;
        }
        if rem.iter().all(|c| c.is_zero_eps(eps)) {
            let mut p = Poly {
                min: self.min - d.min,
                c: q,
            };
            p.trim(eps);
            Some(p)
        } else {
            None
        }
    }

    pub fn is_symmetric(&self, eps: f64) -> bool {
        if self.is_zero() {
            return true;
        }
        let max = self.max_deg().unwrap();
        let min = self.min;
        if max != -min {
            return false;
        }
        (0..=max).all(|e| self.coeff(e).sub(&self.coeff(-e)).is_zero_eps(eps))
    }

    /// The unique `W` with `W(x + 1/x) = self`, if `self` is symmetric.
    pub fn to_t_variable(&self, eps: f64) -> Option<Self> {
        if !self.is_symmetric(eps) {
            return None;
        }
        let mut rest = self.clone();
        let mut w = Poly::zero();
        let t = Poly::from_terms(&[(1, C::one()), (-1, C::one())], eps);
        while !rest.is_zero() {
            let m = rest.max_deg().unwrap();
            debug_assert!(m >= 0);
            let c = rest.coeff(m);
            w = w.add(&Poly::monomial(c.clone(), m), eps);
            rest = rest.sub(&t.pow(m as u32, eps).mul_scalar(&c, eps), eps);
        }
        Some(w)
    }

    /// `self(v)` for nonnegative-exponent `self`; used to undo `to_t_variable`.
    pub fn substitute_poly(&self, v: &Self, eps: f64) -> Option<Self> {
        if self.min_deg().is_some_and(|m| m < 0) {
            return None;
        }
        let mut acc = Poly::zero();
        let mut vp = Poly::one();
        let mut e = 0i64;
        for (exp, c) in self.terms().map(|(e, c)| (e, c.clone())).collect::<Vec<_>>() {
            while e < exp {
                vp = vp.mul(v, eps);
                e += 1;
            }
            acc = acc.add(&vp.mul_scalar(&c, eps), eps);
        }
        Some(acc)
    }

    /// `sum f(c_e) * z^e` — numeric evaluation through a coefficient map.
    pub fn eval_map(&self, z: Complex64, f: impl Fn(&C) -> Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in self.terms() {
            acc += f(c) * z.powi(e as i32);
        }
        acc
    }

    pub fn fmt_with_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms() {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let cs = c.coeff_string();
            let compound =
                cs.contains(' ') || cs.contains('*') || cs[1..].contains(['+', '-']);
            let cs = if compound { format!("({cs})") } else { cs };
            match e {
                0 => out.push_str(&cs),
                1 if cs == "1" => out.push_str(var),
                _ if cs == "1" => out.push_str(&format!("{var}^{e}")),
                1 => out.push_str(&format!("{cs}*{var}")),
                _ => out.push_str(&format!("{cs}*{var}^{e}")),
            }
        }
        out
    }
}

/// Laurent polynomials in `q` over the rationals: the coefficient ring of the
/// symbolic mode.
pub type QPoly = Poly<Rat>;

impl CoeffRing for QPoly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        Poly::add(self, rhs, 0.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Poly::sub(self, rhs, 0.0)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Poly::mul(self, rhs, 0.0)
    }
    fn is_zero_eps(&self, _eps: f64) -> bool {
        self.is_zero()
    }
    fn exact_div(&self, d: &Self, _eps: f64) -> Option<Self> {
        Poly::exact_div(self, d, 0.0)
    }
    fn coeff_string(&self) -> String {
        self.fmt_with_var("q")
    }
    /// Accumulates the product into `acc`'s dense buffer without temporaries.
    fn mul_acc(acc: &mut Self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let lo = a.min + b.min;
        let hi = lo + (a.c.len() + b.c.len()) as i64 - 2;
        acc.reserve_range(lo, hi);
        for (i, ai) in a.c.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.c.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let slot = (lo + (i + j) as i64 - acc.min) as usize;
                acc.c[slot] = acc.c[slot].add(&ai.mul(bj));
            }
        }
        acc.trim(0.0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> Poly<Rat> {
        Poly::from_terms(
            &terms
                .iter()
                .map(|(e, c)| (*e, Rat::from_i64(*c)))
                .collect::<Vec<_>>(),
            0.0,
        )
    }

    #[test]
    fn add_cancels() {
        // (x + 1) + (-1) = x
        let a = p(&[(1, 1), (0, 1)]);
        let b = p(&[(0, -1)]);
        assert_eq!(a.add(&b, 0.0), p(&[(1, 1)]));
        // 0 + p = p
        assert_eq!(Poly::zero().add(&a, 0.0), a);
    }

    #[test]
    fn mul_units_and_squares() {
        // x * x^-1 = 1
        assert_eq!(p(&[(1, 1)]).mul(&p(&[(-1, 1)]), 0.0), Poly::one());
        // (x - 2)(x + 2) = x^2 - 4 (difference of squares at q = 2)
        let l = p(&[(1, 1), (0, -2)]);
        let r = p(&[(1, 1), (0, 2)]);
        assert_eq!(l.mul(&r, 0.0), p(&[(2, 1), (0, -4)]));
    }

    #[test]
    fn min_max_deg() {
        let g = p(&[(2, 1), (-2, 1), (0, -7)]);
        assert_eq!((g.min_deg(), g.max_deg()), (Some(-2), Some(2)));
        assert_eq!(p(&[(0, 5)]).min_deg(), Some(0));
        // x^-3 * x^7 is the monomial x^4
        let m = p(&[(-3, 1)]).mul(&p(&[(7, 1)]), 0.0);
        assert_eq!((m.min_deg(), m.max_deg()), (Some(4), Some(4)));
        assert_eq!(Poly::<Rat>::zero().min_deg(), None);
    }

    #[test]
    fn substitute_power_stretches() {
        let a = p(&[(1, 1), (-1, 1)]);
        assert_eq!(a.substitute_power(3), p(&[(3, 1), (-3, 1)]));
        assert_eq!(a.substitute_power(1), a);
    }

    #[test]
    fn exact_division() {
        let d = p(&[(2, 1), (-2, 1), (0, 3)]);
        let q = p(&[(5, 2), (0, -1), (-3, 7)]);
        let prod = d.mul(&q, 0.0);
        assert_eq!(prod.exact_div(&d, 0.0), Some(q));
        assert_eq!(p(&[(1, 1), (0, 1)]).exact_div(&d, 0.0), None);
        assert_eq!(Poly::<Rat>::zero().exact_div(&d, 0.0), Some(Poly::zero()));
    }

    #[test]
    fn symmetric_and_t_variable() {
        let a = p(&[(1, 1), (-1, 1)]);
        assert!(a.is_symmetric(0.0));
        assert_eq!(a.to_t_variable(0.0), Some(p(&[(1, 1)])));
        // x^2 + x^-2 -> t^2 - 2
        let b = p(&[(2, 1), (-2, 1)]);
        assert_eq!(b.to_t_variable(0.0), Some(p(&[(2, 1), (0, -2)])));
        assert!(!p(&[(1, 1)]).is_symmetric(0.0));
        // round trip
        let t = p(&[(1, 1), (-1, 1)]);
        let w = b.to_t_variable(0.0).unwrap();
        assert_eq!(w.substitute_poly(&t, 0.0), Some(b));
    }
}
