//! Run configuration and the three commands behind the `dertorus` binary:
//! `verify` (all identity suites), `rep` (build and check a `gl_d` module)
//! and `scan` (bounded submodule search). Each command returns its JSON
//! report and whether it succeeded.
//!
//! Suites run in parallel. Each draws from its own ChaCha8 stream, selected
//! by the suite's position in the name-sorted suite list, so a run is
//! reproducible from its seed regardless of scheduling.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{frac, parse_rational, parse_rational_list, q, QVec, Rational};
use crate::fields::{self, FieldVector, ModuleParams, ScanMode};
use crate::gl::{build_irrep, check_irreducible, check_rep, weyl_dim, DominantWeight, GlRep};
use crate::report::IdentityReport;
use crate::sample::Sampler;
use crate::tcalc;
use crate::witt::{check_jacobi, ADerAlgebra, DerAlgebra, SimpleAlgebra, ToroidalAlgebra};

/// Settings shared by all commands. Unset `d` is inferred from `weights`
/// or `alpha`, falling back to 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub d: Option<usize>,
    pub seed: u64,
    pub radius: i64,
    pub trials: usize,
    pub k_max: usize,
    pub word_length: usize,
    pub window: usize,
    pub weights: Option<Vec<u32>>,
    pub b: Rational,
    pub alpha: Option<QVec>,
    pub mode: ScanMode,
    pub fault_inject: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            d: None,
            seed: 0,
            radius: 3,
            trials: 100,
            k_max: 4,
            word_length: 6,
            window: 3,
            weights: None,
            b: q(1),
            alpha: None,
            mode: ScanMode::Der,
            fault_inject: false,
        }
    }
}

fn parse_count(key: &str, value: &str) -> Result<usize> {
    match value.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(Error::Config(format!("{key} must be a positive integer, got {value:?}"))),
    }
}

impl RunConfig {
    /// Sets one `key = value` pair. Keys accept `-` or `_`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim().replace('-', "_").as_str() {
            "d" => self.d = Some(value.parse().map_err(|_| Error::Config(format!("d must be an integer, got {value:?}")))?),
            "seed" => self.seed = value.parse().map_err(|_| Error::Config(format!("seed must be a 64-bit integer, got {value:?}")))?,
            "radius" => self.radius = parse_count("radius", value)? as i64,
            "trials" => self.trials = parse_count("trials", value)?,
            "k_max" => self.k_max = parse_count("k_max", value)?,
            "word_length" => self.word_length = parse_count("word_length", value)?,
            "window" => self.window = parse_count("window", value)?,
            "weights" => self.weights = Some(DominantWeight::parse(value, q(0))?.coeffs().to_vec()),
            "b" => self.b = parse_rational(value)?,
            "alpha" => self.alpha = Some(QVec::new(parse_rational_list(value)?)),
            "mode" => self.mode = value.parse()?,
            "fault_inject" => {
                self.fault_inject = match value {
                    "true" | "1" | "yes" => true,
                    "false" | "0" | "no" => false,
                    _ => return Err(Error::Config(format!("fault_inject must be true or false, got {value:?}"))),
                }
            }
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Applies a flat `key = value` file; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", lineno + 1)))?;
            self.set(key, value).map_err(|e| Error::Config(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(())
    }

    pub fn dim(&self) -> Result<usize> {
        let from_weights = self.weights.as_ref().map(|w| w.len() + 1);
        let from_alpha = self.alpha.as_ref().map(QVec::dim);
        let d = self.d.or(from_weights).or(from_alpha).unwrap_or(2);
        if d < 2 {
            return Err(Error::Config(format!("d must be at least 2, got {d}")));
        }
        if d > 16 {
            return Err(Error::Config(format!("d must be at most 16, got {d}")));
        }
        for (what, other) in [("weights", from_weights), ("alpha", from_alpha)] {
            if let Some(o) = other.filter(|&o| o != d) {
                return Err(Error::Config(format!("{what} imply d = {o}, but d = {d}")));
            }
        }
        Ok(d)
    }

    /// `ψ` from `weights`, defaulting to the first fundamental weight.
    pub fn dominant_weight(&self) -> Result<DominantWeight> {
        let d = self.dim()?;
        let coeffs = self.weights.clone().unwrap_or_else(|| {
            let mut c = vec![0; d - 1];
            c[0] = 1;
            c
        });
        DominantWeight::new(coeffs, self.b.clone())
    }

    /// `α`, defaulting to `(1/2, 0, …, 0)`.
    pub fn alpha(&self) -> Result<QVec> {
        let d = self.dim()?;
        Ok(self.alpha.clone().unwrap_or_else(|| {
            let mut c = vec![q(0); d];
            c[0] = frac(1, 2);
            QVec::new(c)
        }))
    }

    pub fn module_params(&self) -> Result<ModuleParams> {
        ModuleParams::new(self.dominant_weight()?, self.alpha()?)
    }

    pub fn sampler(&self) -> Result<Sampler> {
        Ok(Sampler::new(self.dim()?, self.radius))
    }
}

/// The `sl_2` data with `[e, f]` changed from `h` to `2h`.
pub fn faulty_sl2() -> SimpleAlgebra {
    let g = SimpleAlgebra::sl2();
    let c = g.constant(0, 2, 1) + q(1);
    g.with_constant(0, 2, 1, c)
}

/// `rep` with `E_12` changed at its first entry.
pub fn faulty_rep(rep: &GlRep) -> GlRep {
    let x = rep.e(0, 1).get(0, 0) + q(1);
    rep.with_entry(0, 1, 0, 0, x)
}

/// Checks `G ⊗ A ⊕ Ω/dA ⊕ Der A` built on `g`: the structure data of `g`
/// exhaustively, then random triples.
pub fn toroidal_suite(g: &SimpleAlgebra, s: &Sampler, rng: &mut ChaCha8Rng, trials: usize) -> Vec<IdentityReport> {
    let mut data = IdentityReport::new(format!("structure data of the {}-dimensional simple algebra", g.dim()), "Lie algebra with invariant form");
    match g.validation_failure() {
        None => data.pass_instance(),
        Some(msg) => data = data.fail(msg),
    }
    let alg = ToroidalAlgebra { dim: s.dim, g: g.clone() };
    let g_dim = g.dim();
    vec![data, check_jacobi(&alg, rng, |r| s.tau(r, g_dim), trials)]
}

/// Module checks on `F^α(ψ, b)` with an explicit `gl_d` module.
pub fn module_suite(p: &ModuleParams, s: &Sampler, rng: &mut ChaCha8Rng, trials: usize) -> Vec<IdentityReport> {
    vec![
        check_rep(p.rep()),
        fields::check_module_axiom(p, s, rng, trials, false),
        fields::check_module_axiom(p, s, rng, trials, true),
        fields::check_weight_consistency(p, s, rng, trials),
        fields::check_leibniz(p, s, rng, trials),
        fields::check_t_action(p, s, rng, trials),
    ]
}

type Suite = fn(&RunConfig, &mut ChaCha8Rng) -> Result<Vec<IdentityReport>>;

fn suites() -> Vec<(&'static str, Suite)> {
    let mut list: Vec<(&'static str, Suite)> = vec![
        ("ader-jacobi", |c, rng| {
            let s = c.sampler()?;
            Ok(vec![check_jacobi(&ADerAlgebra { dim: s.dim }, rng, |r| s.ader(r), c.trials)])
        }),
        ("der-jacobi", |c, rng| {
            let s = c.sampler()?;
            Ok(vec![check_jacobi(&DerAlgebra { dim: s.dim }, rng, |r| s.der(r), c.trials)])
        }),
        ("filtration-dims", |c, _| Ok(vec![tcalc::check_filtration_dims(c.dim()?, c.k_max)])),
        ("gl-irreps", |c, rng| {
            let psi = c.dominant_weight()?;
            let mut rep = build_irrep(&psi);
            if c.fault_inject {
                rep = faulty_rep(&rep);
            }
            let mut dims = IdentityReport::new("module dimension matches Weyl's formula", "Weyl dimension formula");
            let (n, w) = (rep.n() as u64, weyl_dim(&psi));
            dims.record(n == w, || format!("built {n}, formula {w}"));
            Ok(vec![dims, check_rep(&rep), check_irreducible(&rep, rng, 3)])
        }),
        ("gl-quotient", |c, rng| {
            let s = c.sampler()?;
            Ok(vec![tcalc::verify_gl_quotient(s.dim), tcalc::check_i2_reduction(&s, rng, c.trials)])
        }),
        ("identity-eigenvalue", |c, rng| {
            let s = c.sampler()?;
            Ok(vec![tcalc::check_identity_eigenvalue(&s, rng, c.trials, c.k_max)])
        }),
        ("ideal-structure", |c, rng| {
            let s = c.sampler()?;
            let (t, k) = (c.trials, c.k_max);
            let k_small = k.min(3);
            Ok(vec![
                tcalc::check_permutation_symmetry(&s, rng, t, k + 1),
                tcalc::check_recursion(&s, rng, t, k + 1),
                tcalc::check_ideal(&s, rng, t, k_small),
                tcalc::check_nesting(&s, rng, t, k_small),
                tcalc::check_bracket_filtration(&s, rng, t, k_small),
                tcalc::check_closed_form_bracket(&s, rng, t, k),
            ])
        }),
        ("layer-relations", |c, rng| {
            let s = c.sampler()?;
            let (t, k) = (c.trials, c.k_max);
            Ok(vec![
                tcalc::check_nonmembership(&s, rng, t, k),
                tcalc::check_additivity(&s, rng, t, k),
                tcalc::check_reflection(&s, rng, t, k),
            ])
        }),
        ("module-axioms", |c, rng| {
            let s = c.sampler()?;
            let mut p = c.module_params()?;
            if c.fault_inject {
                let rep = faulty_rep(p.rep());
                p = ModuleParams::with_rep(p.psi().clone(), p.alpha().clone(), rep)?;
            }
            Ok(module_suite(&p, &s, rng, c.trials))
        }),
        ("t-jacobi", |c, rng| {
            let s = c.sampler()?;
            Ok(vec![check_jacobi(&tcalc::TAlgebra { dim: s.dim }, rng, |r| s.telement(r), c.trials)])
        }),
        ("toroidal-jacobi", |c, rng| {
            let s = c.sampler()?;
            let g = if c.fault_inject { faulty_sl2() } else { SimpleAlgebra::sl2() };
            Ok(toroidal_suite(&g, &s, rng, c.trials))
        }),
    ];
    list.sort_by_key(|(name, _)| *name);
    list
}

/// Names of the suites run by [`cmd_verify`], in report order.
pub fn suite_names() -> Vec<&'static str> {
    suites().into_iter().map(|(n, _)| n).collect()
}

/// Runs every suite. The report is a JSON array of identity results.
pub fn run_suites(cfg: &RunConfig) -> Result<Vec<IdentityReport>> {
    cfg.dim()?;
    let results: Vec<Result<Vec<IdentityReport>>> = suites()
        .into_par_iter()
        .enumerate()
        .map(|(index, (_, suite))| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(index as u64);
            suite(cfg, &mut rng)
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// JSON report and success flag for `verify`.
pub fn cmd_verify(cfg: &RunConfig) -> Result<(String, bool)> {
    let reports = run_suites(cfg)?;
    let ok = reports.iter().all(IdentityReport::passed);
    Ok((serde_json::to_string_pretty(&reports).expect("serializable"), ok))
}

#[derive(Serialize)]
struct MatrixDump {
    name: String,
    rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct RepReport {
    d: usize,
    weights: Vec<u32>,
    b: String,
    dim: usize,
    weyl_dim: u64,
    relations: IdentityReport,
    weight_labels: Vec<QVec>,
    matrices: Vec<MatrixDump>,
}

/// Builds `V(ψ, b)`, checks it, and dumps its matrices.
pub fn cmd_rep(cfg: &RunConfig) -> Result<(String, bool)> {
    let psi = cfg.dominant_weight()?;
    let rep = build_irrep(&psi);
    let relations = check_rep(&rep);
    let wd = weyl_dim(&psi);
    let ok = relations.passed() && rep.n() as u64 == wd;
    let d = rep.d();
    let matrices = (0..d * d)
        .map(|ij| {
            let (i, j) = (ij / d, ij % d);
            let m = rep.e(i, j);
            MatrixDump {
                name: format!("E_{}{}", i + 1, j + 1),
                rows: (0..rep.n()).map(|r| (0..rep.n()).map(|c| m.get(r, c).to_string()).collect()).collect(),
            }
        })
        .collect();
    let report = RepReport {
        d,
        weights: psi.coeffs().to_vec(),
        b: psi.b().to_string(),
        dim: rep.n(),
        weyl_dim: wd,
        relations,
        weight_labels: rep.weights().to_vec(),
        matrices,
    };
    Ok((serde_json::to_string_pretty(&report).expect("serializable"), ok))
}

/// A seeded nonzero start vector supported at weight 0.
pub fn default_start(p: &ModuleParams, seed: u64) -> FieldVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = Sampler::new(p.dim(), 1);
    let zero = crate::exact::Lattice::zero(p.dim());
    loop {
        let coords = s.coords(&mut rng, p.n());
        if coords.iter().any(|c| !c.is_zero()) {
            return FieldVector::from_dense(zero, &coords);
        }
    }
}

/// Scans `F^α(ψ, b)` from a seeded start vector at weight 0. Always succeeds
/// when the parameters are valid; the report is descriptive.
pub fn cmd_scan(cfg: &RunConfig) -> Result<(String, bool)> {
    let p = cfg.module_params()?;
    let start = default_start(&p, cfg.seed);
    let report = fields::submodule_scan(&p, &start, cfg.mode, cfg.word_length, cfg.window)?;
    Ok((serde_json::to_string_pretty(&report).expect("serializable"), true))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_text() {
        let mut c = RunConfig::default();
        c.apply_text("# comment\nd = 3\nb = 5/7\nalpha = 1/3, 0, -2\nk-max = 3\nfault_inject = true\n").unwrap();
        assert_eq!(c.dim().unwrap(), 3);
        assert_eq!(c.b, frac(5, 7));
        assert_eq!(c.k_max, 3);
        assert!(c.fault_inject);
        assert!(c.apply_text("nonsense").is_err());
        assert!(c.apply_text("b = 0.5").is_err());
        assert!(c.apply_text("colour = red").is_err());
    }

    #[test]
    fn dimension_rules() {
        let mut c = RunConfig::default();
        assert_eq!(c.dim().unwrap(), 2);
        c.set("d", "1").unwrap();
        assert!(c.dim().is_err());
        let mut c = RunConfig::default();
        c.set("weights", "1,1").unwrap();
        assert_eq!(c.dim().unwrap(), 3);
        c.set("alpha", "0,0").unwrap();
        assert!(c.dim().is_err());
    }

    #[test]
    fn faults_are_invalid() {
        assert!(faulty_sl2().validate().is_err());
        let rep = build_irrep(&DominantWeight::new(vec![1], q(0)).unwrap());
        assert!(faulty_rep(&rep).first_failure().is_some());
    }
}
