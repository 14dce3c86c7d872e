//! Exponent vectors under degree-reverse-lexicographic order.

use std::cmp::Ordering;

/// An exponent vector. `Ord` is grevlex with `x0 > x1 > ... > xm`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn var(nvars: usize, i: usize, power: u32) -> Self {
        let mut e = vec![0; nvars];
        e[i] = power;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(&rhs.0).all(|(a, b)| a <= b)
    }

    /// `rhs / self`, when `self` divides `rhs`.
    pub fn quotient_of(&self, rhs: &Monomial) -> Option<Monomial> {
        if !self.divides(rhs) {
            return None;
        }
        Some(Monomial(rhs.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(&rhs.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Exponent vectors are permuted so that variable `i` moves to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut e = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            e[perm[i]] = x;
        }
        Monomial(e)
    }

    /// All monomials of total degree `d`, in descending grevlex order.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial(vec![]));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
