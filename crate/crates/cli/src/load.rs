//! Turning job specs into engine objects and back. Errors carry the path of
//! the offending field, e.g. `objects.e.mf.e1[0][1]`.

use std::sync::Arc;

use mfcat_algebra::{GradedRing, ModulePresentation, Poly, PolyMatrix, F32003};
use mfcat_linalg::Field;
use mfcat_mfcore::{mf_verify, MFContext, MatrixFactorization, MfError, Mode, SheafMap, TwistSum};

use crate::schema::{ContextSpec, MapSpec, MfSpec, ModeSpec, ModuleSpec, RingSpec};
use crate::CliError;

pub type F = F32003;
pub type Mf = MatrixFactorization<F>;

fn input(path: &str, message: impl ToString) -> CliError {
    CliError::Input { path: path.to_string(), message: message.to_string() }
}

pub fn ring(spec: &RingSpec, path: &str) -> Result<Arc<GradedRing<F>>, CliError> {
    if spec.field != F::descriptor() {
        return Err(input(&format!("{path}.field"), format!("unsupported field {:?}; only {} is built in", spec.field, F::descriptor())));
    }
    if spec.variables.is_empty() {
        return Err(input(&format!("{path}.variables"), "no variables"));
    }
    let names: Vec<&str> = spec.variables.iter().map(String::as_str).collect();
    let free = GradedRing::<F>::polynomial(&names);
    for (i, g) in spec.ideal.iter().enumerate() {
        free.parse_poly(g).map_err(|e| input(&format!("{path}.ideal[{i}]"), e))?;
    }
    let gens: Vec<&str> = spec.ideal.iter().map(String::as_str).collect();
    Ok(Arc::new(GradedRing::parse(&names, &gens).map_err(|e| input(&format!("{path}.ideal"), e))?))
}

pub fn context(ring: &Arc<GradedRing<F>>, spec: &ContextSpec, path: &str) -> Result<Arc<MFContext<F>>, CliError> {
    let mode = match spec.mode {
        ModeSpec::Projective => Mode::Projective,
        ModeSpec::AffineGraded => Mode::AffineGraded,
    };
    let w = ring.parse_poly(&spec.w).map_err(|e| input(&format!("{path}.w"), e))?;
    Ok(Arc::new(MFContext::new(ring.clone(), w, mode).map_err(|e| input(&format!("{path}.w"), e))?))
}

fn matrix(
    ring: &GradedRing<F>,
    rows: &[Vec<String>],
    shape: (usize, usize),
    path: &str,
) -> Result<PolyMatrix<F>, CliError> {
    if rows.is_empty() {
        return Ok(PolyMatrix::zeros(ring.nvars(), shape.0, shape.1));
    }
    let mut parsed: Vec<Vec<Poly<F>>> = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (c, s) in row.iter().enumerate() {
            out.push(ring.parse_poly(s).map_err(|e| input(&format!("{path}[{r}][{c}]"), e))?);
        }
        parsed.push(out);
    }
    PolyMatrix::from_rows(ring.nvars(), parsed).map_err(|e| input(path, e))
}

fn sheaf_map(
    ring: &GradedRing<F>,
    source: TwistSum,
    target: TwistSum,
    rows: &[Vec<String>],
    path: &str,
) -> Result<SheafMap<F>, CliError> {
    let m = matrix(ring, rows, (target.rank(), source.rank()), path)?;
    SheafMap::new(ring, source, target, m).map_err(|e| match e {
        MfError::Degree { row, col, .. } => input(&format!("{path}[{row}][{col}]"), e),
        e => input(path, e),
    })
}

/// Parses without checking the two identities; see [`mf_checked`].
pub fn mf(ctx: &Arc<MFContext<F>>, spec: &MfSpec, path: &str) -> Result<Mf, CliError> {
    let ring = ctx.ring();
    let big1 = TwistSum::new(spec.twists_1.clone());
    let big0 = TwistSum::new(spec.twists_0.clone());
    let e1 = sheaf_map(ring, big1.clone(), big0.clone(), &spec.e1, &format!("{path}.e1"))?;
    let e0 = sheaf_map(ring, big0, big1.twisted(ctx.d()), &spec.e0, &format!("{path}.e0"))?;
    MatrixFactorization::new(ctx.clone(), e1, e0).map_err(|e| input(path, e))
}

pub fn mf_checked(ctx: &Arc<MFContext<F>>, spec: &MfSpec, path: &str) -> Result<Mf, CliError> {
    let e = mf(ctx, spec, path)?;
    mf_verify(&e).map_err(|v| input(path, format!("not a matrix factorization: {v}")))?;
    Ok(e)
}

/// Over `R_Y`.
pub fn module(ry: &GradedRing<F>, spec: &ModuleSpec, path: &str) -> Result<ModulePresentation<F>, CliError> {
    let m = matrix(ry, &spec.relations, (spec.gen_twists.len(), spec.rel_twists.len()), &format!("{path}.relations"))?;
    ModulePresentation::new(ry, spec.gen_twists.clone(), spec.rel_twists.clone(), m).map_err(|e| input(path, e))
}

pub fn map(ring: &GradedRing<F>, spec: &MapSpec, path: &str) -> Result<SheafMap<F>, CliError> {
    sheaf_map(
        ring,
        TwistSum::new(spec.source.clone()),
        TwistSum::new(spec.target.clone()),
        &spec.matrix,
        &format!("{path}.matrix"),
    )
}

pub fn mf_spec(e: &Mf) -> MfSpec {
    let (e1, e0) = e.display_rows();
    MfSpec { twists_1: e.big1().twists().to_vec(), twists_0: e.big0().twists().to_vec(), e1, e0 }
}

pub fn module_spec(ry: &GradedRing<F>, m: &ModulePresentation<F>) -> ModuleSpec {
    ModuleSpec {
        gen_twists: m.gen_twists.clone(),
        rel_twists: m.rel_twists.clone(),
        relations: m.relations.display_rows(ry),
    }
}
