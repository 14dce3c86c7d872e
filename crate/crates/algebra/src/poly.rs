//! Sparse multivariate polynomials.

use std::collections::HashMap;

use mfcat_linalg::Field;

use crate::monomial::Monomial;

/// Terms are kept sorted in descending grevlex order with nonzero
/// coefficients and distinct exponent vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<F> {
    nvars: usize,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i, 1), F::one())
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            Poly::zero(nvars)
        } else {
            Poly { nvars, terms: vec![(m, c)] }
        }
    }

    /// Collects like terms and sorts.
    pub fn from_terms(nvars: usize, terms: Vec<(Monomial, F)>) -> Self {
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            let e = acc.entry(m).or_insert_with(F::zero);
            *e = e.add(&c);
        }
        let mut t: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        t.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { nvars, terms: t }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, F)> {
        self.terms.first()
    }

    /// The constant value, when the polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<F> {
        match self.terms.as_slice() {
            [] => Some(F::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(x, _)| x.degree() == d)
            }
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms
            .iter()
            .find(|(x, _)| x == m)
            .map_or_else(F::zero, |(_, c)| c.clone())
    }

    fn merge(&self, rhs: &Self, negate_rhs: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        let sgn = |c: &F| if negate_rhs { c.neg() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0.clone(), sgn(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_rhs { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sgn(c))));
        Poly { nvars: self.nvars.max(rhs.nvars), terms: out }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.merge(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.merge(rhs, true)
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect(),
        }
    }

    /// Multiplication by `c·m`; order is preserved since grevlex is a monomial order.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(x, y)| (x.mul(m), y.mul(c))).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.nvars.max(rhs.nvars));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                terms.push((m1.mul(m2), c1.mul(c2)));
            }
        }
        Poly::from_terms(self.nvars, terms)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        Poly::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.permuted(perm), c.clone())).collect(),
        )
    }

    /// Divides every term by `x_i^k`, where `k` is the largest power dividing all terms.
    pub fn strip_variable(&self, i: usize) -> Self {
        let k = self.terms.iter().map(|(m, _)| m.exponents()[i]).min().unwrap_or(0);
        if k == 0 {
            return self.clone();
        }
        let d = Monomial::var(self.nvars, i, k);
        Poly::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(m, c)| (d.quotient_of(m).expect("divisible"), c.clone()))
                .collect(),
        )
    }

    /// Renders with the given variable names, e.g. `x0^2*x1 - 3*x2^3`.
    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = c.signed_parts();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            if factors.is_empty() {
                s.push_str(&mag);
            } else {
                if mag != "1" {
                    s.push_str(&mag);
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mfcat_linalg::F32003;

    type P = Poly<F32003>;

    #[test]
    fn cancellation_removes_terms() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let f = x.add(&y);
        assert!(f.sub(&f).is_zero());
        assert_eq!(f.mul(&f).terms().len(), 3);
    }

    #[test]
    fn display_round_names() {
        let names: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let f = x.pow(2).sub(&y.scale(&F32003::from_i64(3)));
        assert_eq!(f.display(&names), "x^2 - 3*y");
    }

    #[test]
    fn strip_variable_divides_common_power() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let f = x.mul(&y).mul(&y).add(&y.pow(3));
        assert_eq!(f.strip_variable(1), x.add(&y));
    }
}
