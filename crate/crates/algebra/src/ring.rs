//! Standard-graded quotient rings `R = S/I` with cached graded pieces.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use mfcat_linalg::{Field, Matrix};

use crate::groebner::{groebner_basis, reduce_poly};
use crate::monomial::Monomial;
use crate::parse::parse_poly;
use crate::poly::Poly;
use crate::AlgebraError;

/// Monomial basis of one graded piece `R_n`.
#[derive(Debug)]
pub struct Piece {
    pub degree: i64,
    pub basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// `S/I` for `S = k[x_0..x_m]` with all variables of degree one.
///
/// Graded pieces and monomial normal forms are cached behind locks; the
/// ring itself is immutable once built.
pub struct GradedRing<F> {
    names: Vec<String>,
    ideal: Vec<Poly<F>>,
    gb: Vec<Poly<F>>,
    monomial_gb: bool,
    pieces: RwLock<HashMap<i64, Arc<Piece>>>,
    nf_cache: RwLock<HashMap<Monomial, Poly<F>>>,
}

impl<F: Field> std::fmt::Debug for GradedRing<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gens: Vec<String> = self.ideal.iter().map(|p| self.display(p)).collect();
        write!(f, "{}[{}]/({})", F::descriptor(), self.names.join(","), gens.join(", "))
    }
}

impl<F: Field> GradedRing<F> {
    pub fn new(names: Vec<String>, gens: Vec<Poly<F>>) -> Result<Self, AlgebraError> {
        if names.is_empty() {
            return Err(AlgebraError::Invalid("a ring needs at least one variable".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            if !seen.insert(n) {
                return Err(AlgebraError::Invalid(format!("variable `{n}` declared twice")));
            }
        }
        let gens: Vec<Poly<F>> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            if !g.is_homogeneous() {
                return Err(AlgebraError::NotHomogeneous(g.display(&names)));
            }
            if g.degree() == Some(0) {
                return Err(AlgebraError::Invalid(format!(
                    "ideal generator `{}` has degree 0",
                    g.display(&names)
                )));
            }
        }
        let gb = groebner_basis(&gens);
        let monomial_gb = gb.iter().all(|g| g.terms().len() == 1);
        Ok(GradedRing {
            names,
            ideal: gens,
            gb,
            monomial_gb,
            pieces: RwLock::new(HashMap::new()),
            nf_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn polynomial(names: &[&str]) -> Self {
        Self::new(names.iter().map(|s| s.to_string()).collect(), Vec::new())
            .expect("distinct names")
    }

    /// Builds `k[names]/(gens)` from strings.
    pub fn parse(names: &[&str], gens: &[&str]) -> Result<Self, AlgebraError> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let polys = gens
            .iter()
            .map(|g| parse_poly(g, &names))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(names, polys)
    }

    /// `R/(extra)`, sharing variable names.
    pub fn quotient(&self, extra: &[Poly<F>]) -> Result<Self, AlgebraError> {
        let mut gens = self.ideal.clone();
        gens.extend(extra.iter().cloned());
        Self::new(self.names.clone(), gens)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn ideal(&self) -> &[Poly<F>] {
        &self.ideal
    }

    pub fn gb(&self) -> &[Poly<F>] {
        &self.gb
    }

    pub fn is_polynomial(&self) -> bool {
        self.gb.is_empty()
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.ideal.iter().filter_map(|g| g.degree()).max().unwrap_or(0)
    }

    pub fn parse_poly(&self, s: &str) -> Result<Poly<F>, AlgebraError> {
        Ok(parse_poly(s, &self.names)?)
    }

    pub fn display(&self, f: &Poly<F>) -> String {
        f.display(&self.names)
    }

    pub fn var(&self, i: usize) -> Poly<F> {
        Poly::var(self.nvars(), i)
    }

    pub fn zero(&self) -> Poly<F> {
        Poly::zero(self.nvars())
    }

    pub fn one(&self) -> Poly<F> {
        Poly::one(self.nvars())
    }

    pub fn constant(&self, c: i64) -> Poly<F> {
        Poly::constant(self.nvars(), F::from_i64(c))
    }

    /// Normal form of a monomial, cached for quotient rings.
    pub fn nf_monomial(&self, m: &Monomial) -> Poly<F> {
        if self.gb.is_empty() {
            return Poly::term(m.clone(), F::one());
        }
        if self.monomial_gb {
            let dead = self
                .gb
                .iter()
                .any(|g| g.leading().map_or(false, |(l, _)| l.divides(m)));
            return if dead {
                Poly::zero(self.nvars())
            } else {
                Poly::term(m.clone(), F::one())
            };
        }
        if let Some(p) = self.nf_cache.read().expect("cache lock").get(m) {
            return p.clone();
        }
        let p = reduce_poly(&Poly::term(m.clone(), F::one()), &self.gb);
        self.nf_cache
            .write()
            .expect("cache lock")
            .insert(m.clone(), p.clone());
        p
    }

    /// The unique remainder modulo the Gröbner basis of the ideal.
    pub fn normal_form(&self, f: &Poly<F>) -> Poly<F> {
        if self.gb.is_empty() {
            return f.clone();
        }
        reduce_poly(f, &self.gb)
    }

    pub fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        self.normal_form(&a.mul(b))
    }

    pub fn is_zero(&self, f: &Poly<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Standard monomials of degree `n`; empty for `n < 0`.
    pub fn piece(&self, n: i64) -> Arc<Piece> {
        if let Some(p) = self.pieces.read().expect("piece lock").get(&n) {
            return p.clone();
        }
        let basis: Vec<Monomial> = if n < 0 {
            Vec::new()
        } else {
            Monomial::all_of_degree(self.nvars(), n as u32)
                .into_iter()
                .filter(|m| {
                    !self
                        .gb
                        .iter()
                        .any(|g| g.leading().map_or(false, |(l, _)| l.divides(m)))
                })
                .collect()
        };
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let piece = Arc::new(Piece { degree: n, basis, index });
        self.pieces
            .write()
            .expect("piece lock")
            .insert(n, piece.clone());
        piece
    }

    pub fn dim(&self, n: i64) -> usize {
        self.piece(n).dim()
    }

    /// Coordinates of `f` (homogeneous of degree `n`, or zero) in the basis of `R_n`.
    pub fn coordinates(&self, f: &Poly<F>, n: i64) -> Result<Vec<F>, AlgebraError> {
        let piece = self.piece(n);
        let mut v = vec![F::zero(); piece.dim()];
        for (m, c) in f.terms() {
            if m.degree() as i64 != n {
                return Err(AlgebraError::NotHomogeneous(format!(
                    "{} is not of degree {n}",
                    self.display(f)
                )));
            }
            for (sm, sc) in self.nf_monomial(m).terms() {
                let i = piece.index_of(sm).expect("normal forms are standard");
                v[i] = v[i].add(&sc.mul(c));
            }
        }
        Ok(v)
    }

    pub fn from_coordinates(&self, n: i64, v: &[F]) -> Poly<F> {
        let piece = self.piece(n);
        Poly::from_terms(
            self.nvars(),
            piece
                .basis
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        )
    }

    /// Matrix of multiplication by `p: R_src -> R_tgt` in monomial bases.
    /// `p` must be zero or homogeneous of degree `tgt - src`.
    pub fn multiplication_matrix(&self, p: &Poly<F>, src: i64, tgt: i64) -> Matrix<F> {
        let s = self.piece(src);
        let t = self.piece(tgt);
        let mut m = Matrix::zeros(t.dim(), s.dim());
        if p.is_zero() || s.dim() == 0 || t.dim() == 0 {
            return m;
        }
        debug_assert!(p.terms().iter().all(|(x, _)| x.degree() as i64 == tgt - src));
        for (j, mu) in s.basis.iter().enumerate() {
            for (x, c) in p.terms() {
                for (sm, sc) in self.nf_monomial(&x.mul(mu)).terms() {
                    let i = t.index_of(sm).expect("standard monomial");
                    m.add_at(i, j, &sc.mul(c));
                }
            }
        }
        m
    }
}

/// Monomial basis of `R_n`; empty for `n < 0`.
pub fn graded_piece_basis<F: Field>(ring: &GradedRing<F>, n: i64) -> Vec<Monomial> {
    ring.piece(n).basis.clone()
}

/// Normal form of `f` in `ring`.
pub fn normal_form<F: Field>(f: &Poly<F>, ring: &GradedRing<F>) -> Poly<F> {
    ring.normal_form(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mfcat_linalg::F32003;

    #[test]
    fn normal_form_examples() {
        let r = GradedRing::<F32003>::parse(&["x", "y", "z"], &["x*y"]).unwrap();
        let f = r.parse_poly("x*y + z^2").unwrap();
        assert_eq!(r.display(&r.normal_form(&f)), "z^2");

        let r2 = GradedRing::<F32003>::parse(&["x", "y", "z"], &["x^2 - y*z", "y^2"]).unwrap();
        assert!(r2.normal_form(&r2.parse_poly("x^2*y").unwrap()).is_zero());
        assert!(r2.normal_form(&r2.parse_poly("y^2*z").unwrap()).is_zero());
    }

    #[test]
    fn polynomial_ring_normal_form_is_identity() {
        let r = GradedRing::<F32003>::polynomial(&["x", "y"]);
        let f = r.parse_poly("x^3 - 2*x*y^2 + 5").unwrap();
        assert_eq!(r.normal_form(&f), f);
    }

    #[test]
    fn graded_piece_dimensions() {
        let p1 = GradedRing::<F32003>::polynomial(&["x0", "x1"]);
        assert_eq!(p1.dim(2), 3);
        assert_eq!(p1.dim(-1), 0);
        let r = GradedRing::<F32003>::parse(&["x", "y", "z"], &["x*y"]).unwrap();
        assert_eq!(graded_piece_basis(&r, 2).len(), 5);
        assert!(graded_piece_basis(&r, -1).is_empty());
    }

    #[test]
    fn rejects_inhomogeneous_and_constant_generators() {
        assert!(GradedRing::<F32003>::parse(&["x", "y"], &["x^2 - y"]).is_err());
        assert!(GradedRing::<F32003>::parse(&["x", "y"], &["3"]).is_err());
        assert!(GradedRing::<F32003>::parse(&["x", "x"], &[]).is_err());
    }

    #[test]
    fn multiplication_matrix_respects_relations() {
        let r = GradedRing::<F32003>::parse(&["x", "y"], &["x*y"]).unwrap();
        let m = r.multiplication_matrix(&r.var(0), 1, 2);
        // x·x = x^2, x·y = 0
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 2);
        assert_eq!(mfcat_linalg::rank(&m), 1);
    }
}
