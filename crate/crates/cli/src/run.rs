//! Dispatch of a validated [`JobSpec`] to the engine.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use mfcat_algebra::{GradedRing, ModulePresentation};
use mfcat_cohomology::{
    cech_cohomology, cech_hypercohomology, cohomology_report, Schedule, Stable, Threshold, ThresholdTag,
};
use mfcat_homotopycat::{
    compose_h, hom_h, hom_naive, locally_contractible, prop28_report, stabilize, stabilize_at, HomClass, HomSpace,
    StabilizationCertificate, Verdict,
};
use mfcat_hypersurface::{
    coker_module, ext_gamma_dims, ext_gamma_normalized, is_relatively_perfect, mf_from_module, stable_hom_dim,
    HypersurfaceContext, RelPerfect,
};
use mfcat_linalg::Field;
use mfcat_mfcore::{mapping_complex, mf_verify, MFContext, SheafMap, StrictMorphism};

use crate::load::{self, Mf, F};
use crate::schema::{Command, JobSpec, ModelSpec, ObjectSpec, ThresholdFlags};
use crate::suite::{generate_suite, mf_hash};
use crate::{CliError, ENGINE_VERSION, EXIT_INCONCLUSIVE, EXIT_OK};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: Value,
    pub results: Value,
    /// Some answer rests on a bound that was not conclusive.
    pub inconclusive: bool,
    pub engine_version: String,
    pub input_hash: String,
    pub timing_ms: u64,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.inconclusive {
            EXIT_INCONCLUSIVE
        } else {
            EXIT_OK
        }
    }

    /// The report with timing zeroed, for byte comparisons.
    pub fn untimed(&self) -> Report {
        Report { timing_ms: 0, ..self.clone() }
    }
}

pub fn input_hash(spec: &JobSpec) -> String {
    let bytes = serde_json::to_vec(spec).expect("plain data");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

struct Job<'a> {
    spec: &'a JobSpec,
    schedule: Schedule,
}

fn input(path: impl ToString, message: impl ToString) -> CliError {
    CliError::Input { path: path.to_string(), message: message.to_string() }
}

/// Field elements as the nearest signed integers.
fn signed(c: &F) -> i64 {
    let (neg, digits) = c.signed_parts();
    let v: i64 = digits.parse().expect("prime field element");
    if neg {
        -v
    } else {
        v
    }
}

fn stable_json(s: &Stable) -> Value {
    json!({"dim": s.dim, "stable": s.stable, "bound": s.bound})
}

fn threshold_json(t: &Threshold) -> Value {
    json!({"n0": t.n0, "tag": t.tag.to_string()})
}

fn certificate_json(c: &StabilizationCertificate) -> Value {
    json!({
        "j": c.j,
        "k": c.k,
        "inventory": c.inventory.iter().map(|(q, t)| json!({"row": q, "twists": t})).collect::<Vec<_>>(),
        "min_twist": c.min_twist,
        "threshold": threshold_json(&c.threshold),
        "holds": c.recheck(),
    })
}

fn map_json(ring: &GradedRing<F>, m: &SheafMap<F>) -> Value {
    json!({"source": m.source.twists(), "target": m.target.twists(), "matrix": m.matrix.display_rows(ring)})
}

fn morphism_json(ring: &GradedRing<F>, g: &StrictMorphism<F>) -> Value {
    json!({"g1": map_json(ring, &g.g1), "g0": map_json(ring, &g.g0)})
}

fn space_json(s: &HomSpace<F>) -> Value {
    let ring = s.source.ctx.ring();
    let stab = s.stabilization.as_ref();
    json!({
        "dim": s.dim(),
        "model": s.model.to_string(),
        "level": s.level(),
        "representing_source": load::mf_spec(s.representing_source()),
        "basis": s.basis.iter().map(|b| morphism_json(ring, b)).collect::<Vec<_>>(),
        "certificate": stab.map(|s| certificate_json(&s.certificate)),
    })
}

fn verdict(v: Verdict, inconclusive: &mut bool) -> Value {
    *inconclusive |= v == Verdict::Inconclusive;
    Value::String(v.to_string())
}

impl Job<'_> {
    fn ring(&self) -> Result<Arc<GradedRing<F>>, CliError> {
        match (&self.spec.ring, self.spec.space) {
            (Some(r), _) => load::ring(r, "ring"),
            (None, Some(s)) => load::ring(&s.ring(), "space"),
            (None, None) => Err(input("ring", "the job needs a ring or a space")),
        }
    }

    fn ctx(&self) -> Result<Arc<MFContext<F>>, CliError> {
        let ring = self.ring()?;
        match (&self.spec.context, self.spec.space) {
            (Some(c), _) => load::context(&ring, c, "context"),
            (None, Some(s)) => load::context(&ring, &s.context(), "space"),
            (None, None) => Err(input("context", "the job needs a context or a space")),
        }
    }

    fn hctx(&self) -> Result<HypersurfaceContext<F>, CliError> {
        Ok(HypersurfaceContext::new(self.ctx()?)?)
    }

    fn object(&self, name: &str) -> Result<&ObjectSpec, CliError> {
        self.spec.objects.get(name).ok_or_else(|| input(format!("objects.{name}"), "no such object"))
    }

    fn mf(&self, ctx: &Arc<MFContext<F>>, name: &str) -> Result<Mf, CliError> {
        match self.object(name)? {
            ObjectSpec::Mf(s) => load::mf_checked(ctx, s, &format!("objects.{name}.mf")),
            _ => Err(input(format!("objects.{name}"), "expected a matrix factorization")),
        }
    }

    fn module(&self, ry: &GradedRing<F>, name: &str) -> Result<ModulePresentation<F>, CliError> {
        match self.object(name)? {
            ObjectSpec::Module(s) => load::module(ry, s, &format!("objects.{name}.module")),
            _ => Err(input(format!("objects.{name}"), "expected a module")),
        }
    }

    fn map(&self, ring: &GradedRing<F>, name: &str) -> Result<SheafMap<F>, CliError> {
        match self.object(name)? {
            ObjectSpec::Map(s) => load::map(ring, s, &format!("objects.{name}.map")),
            _ => Err(input(format!("objects.{name}"), "expected a map")),
        }
    }

    /// A scanned threshold is evidence only, so it must be acknowledged.
    fn threshold(&self, ctx: &Arc<MFContext<F>>, flags: &ThresholdFlags) -> Result<Threshold, CliError> {
        let t = mfcat_homotopycat::threshold(ctx, flags.threshold)?;
        if t.tag == ThresholdTag::Scanned && !flags.acknowledge_scanned {
            return Err(CliError::Unacknowledged(format!("n0 = {}", t.n0)));
        }
        Ok(t)
    }

    fn space(&self, model: ModelSpec, e: &Mf, f: &Mf, t: &Threshold) -> Result<HomSpace<F>, CliError> {
        Ok(match model {
            ModelSpec::Naive => hom_naive(e, f)?,
            ModelSpec::Hyper => hom_h(e, f, t)?,
        })
    }

    fn dispatch(&self, inconclusive: &mut bool) -> Result<Value, CliError> {
        Ok(match &self.spec.command {
            Command::Verify { object } => {
                let ctx = self.ctx()?;
                let e = match self.object(object)? {
                    ObjectSpec::Mf(s) => load::mf(&ctx, s, &format!("objects.{object}.mf"))?,
                    _ => return Err(input(format!("objects.{object}"), "expected a matrix factorization")),
                };
                match mf_verify(&e) {
                    Ok(()) => json!({"valid": true}),
                    Err(v) => json!({"valid": false, "violation": v.to_string()}),
                }
            }
            Command::Hom(fl) => {
                let ctx = self.ctx()?;
                let t = self.threshold(&ctx, &fl.threshold)?;
                let e = self.mf(&ctx, &fl.source)?;
                let f = self.mf(&ctx, &fl.target)?.shifted(fl.shift).twist(fl.twist);
                let mut out = space_json(&self.space(fl.model, &e, &f, &t)?);
                out["threshold"] = threshold_json(&t);
                out
            }
            Command::Compose(fl) => {
                let ctx = self.ctx()?;
                let t = self.threshold(&ctx, &fl.threshold)?;
                let (e, f, g) = (self.mf(&ctx, &fl.source)?, self.mf(&ctx, &fl.middle)?, self.mf(&ctx, &fl.target)?);
                let class = |s: HomSpace<F>, c: &[i64], path: &str| {
                    let coords = c.iter().map(|&v| F::from_i64(v)).collect();
                    HomClass::new(Arc::new(s), coords).map_err(|err| input(format!("command.flags.{path}"), err))
                };
                let a = class(self.space(fl.model, &e, &f, &t)?, &fl.alpha, "alpha")?;
                let b = class(self.space(fl.model, &f, &g, &t)?, &fl.beta, "beta")?;
                let c = compose_h(&a, &b, &t)?;
                json!({
                    "dim": c.space.dim(),
                    "level": c.space.level(),
                    "coords": c.coords.iter().map(signed).collect::<Vec<_>>(),
                })
            }
            Command::Cech(fl) => {
                let ring = self.ring()?;
                match (fl.twist_to, fl.p) {
                    (None, Some(p)) => {
                        let s = cech_cohomology(&ring, fl.twist, p, &self.schedule)?;
                        *inconclusive |= !s.stable;
                        stable_json(&s)
                    }
                    (to, p) => {
                        let to = to.unwrap_or(fl.twist);
                        if to < fl.twist {
                            return Err(input("command.flags.twist_to", "below twist"));
                        }
                        let ps = p.map_or(0..=ring.nvars() - 1, |p| p..=p);
                        let r = cohomology_report(&ring, ps, fl.twist..=to, &self.schedule)?;
                        *inconclusive |= !r.all_stable();
                        let entries: Vec<Value> = r
                            .entries
                            .iter()
                            .map(|(&(p, n), s)| json!({"p": p, "n": n, "dim": s.dim, "stable": s.stable, "bound": s.bound}))
                            .collect();
                        json!({"entries": entries, "table": r.table()})
                    }
                }
            }
            Command::CechHh(fl) => {
                let ctx = self.ctx()?;
                let (e, f) = (self.mf(&ctx, &fl.source)?, self.mf(&ctx, &fl.target)?);
                let s = cech_hypercohomology(&mapping_complex(&e, &f)?, fl.q, &self.schedule)?;
                *inconclusive |= !s.stable;
                stable_json(&s)
            }
            Command::Stabilize(fl) => {
                let ctx = self.ctx()?;
                let t = self.threshold(&ctx, &fl.threshold)?;
                let (e, f) = (self.mf(&ctx, &fl.source)?, self.mf(&ctx, &fl.target)?);
                let s = match fl.level {
                    Some(j) => stabilize_at(&e, &[&f], 0, j, &t)?,
                    None => stabilize(&e, &f, 0, &t)?,
                };
                json!({
                    "level": s.j,
                    "certificate": certificate_json(&s.certificate),
                    "twists_1": s.source.big1().twists(),
                    "twists_0": s.source.big0().twists(),
                })
            }
            Command::Contractible(fl) => {
                let e = self.mf(&self.ctx()?, &fl.object)?;
                json!({"locally_contractible": verdict(locally_contractible(&e, fl.bound)?, inconclusive)})
            }
            Command::Prop28(fl) => {
                let e = self.mf(&self.ctx()?, &fl.object)?;
                let r = prop28_report(&e, fl.bound)?;
                json!({
                    "contractible": r.contractible,
                    "acyclic_locally": verdict(r.condition2, inconclusive),
                    "locally_free": verdict(r.locally_free, inconclusive),
                    "consistent": r.consistent,
                })
            }
            Command::Coker { object } => {
                let h = self.hctx()?;
                let e = self.mf(h.ctx(), object)?;
                json!({"module": load::module_spec(h.ry(), &coker_module(&h, &e)?)})
            }
            Command::FromModule { map } => {
                let ctx = self.ctx()?;
                let alpha = self.map(ctx.ring(), map)?;
                json!({"mf": load::mf_spec(&mf_from_module(&ctx, &alpha)?)})
            }
            Command::ExtTable(fl) => {
                let h = self.hctx()?;
                let e = self.mf(h.ctx(), &fl.source)?;
                let n = self.module(h.ry(), &fl.module)?;
                let qs = fl.q_from..=fl.q_to;
                let rows = if fl.normalized {
                    ext_gamma_normalized(&h, &e, &n, qs, &self.schedule)?
                } else {
                    ext_gamma_dims(&h, &e, &n, qs, &self.schedule)?
                };
                *inconclusive |= rows.iter().any(|(_, s)| !s.stable);
                let rows: Vec<Value> = rows
                    .iter()
                    .map(|(q, s)| json!({"q": q, "dim": s.dim, "stable": s.stable, "bound": s.bound}))
                    .collect();
                json!({"normalized": fl.normalized, "rows": rows})
            }
            Command::StableHom(fl) => {
                let h = self.hctx()?;
                let e = self.mf(h.ctx(), &fl.source)?;
                let n = self.module(h.ry(), &fl.module)?;
                let s = stable_hom_dim(&h, &e, &n, &self.schedule)?;
                json!({"dim": s.dim, "q": s.q})
            }
            Command::RelPerfect(fl) => {
                let h = self.hctx()?;
                let m = self.module(h.ry(), &fl.module)?;
                let r = is_relatively_perfect(&h, &m, fl.bound as usize)?;
                *inconclusive |= r == RelPerfect::Inconclusive;
                match r {
                    RelPerfect::True { steps } => json!({"verdict": r.label(), "steps": steps}),
                    RelPerfect::FalseWithinBound { ref cycle } => json!({"verdict": r.label(), "cycle": cycle}),
                    RelPerfect::Inconclusive => json!({"verdict": r.label()}),
                }
            }
            Command::Suite(fl) => {
                let objects: Vec<Value> = generate_suite(fl.seed, fl.profile)
                    .iter()
                    .map(|e| json!({"hash": mf_hash(e), "mf": load::mf_spec(e)}))
                    .collect();
                json!({"profile": fl.profile, "seed": fl.seed, "space": fl.profile.space(), "objects": objects})
            }
        })
    }
}

pub fn run(spec: &JobSpec) -> Result<Report, CliError> {
    let start = Instant::now();
    let job = Job { spec, schedule: Schedule::from_env() };
    let mut inconclusive = false;
    let results = job.dispatch(&mut inconclusive)?;
    Ok(Report {
        command: serde_json::to_value(&spec.command)?,
        results,
        inconclusive,
        engine_version: ENGINE_VERSION.to_string(),
        input_hash: input_hash(spec),
        timing_ms: start.elapsed().as_millis() as u64,
    })
}
