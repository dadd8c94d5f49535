use rayon::prelude::*;

use super::config::{Experiment, ExperimentConfig, GraphSource, Validated};
use super::report::{num, Report, Verdict};
use crate::applications::{
    ball_growth_check, greedy_growth_experiment, percolation_envelope, percolation_run,
    randic_certificates, randic_max, PercolationConfig, PercolationMode, WeightModel,
};
use crate::capacity::verify_capacity_bounds;
use crate::enumeration::{
    count_animals, count_simple_paths, count_theta_paths, fold_animals, for_each_animal,
    verify_exponential_bound, CountResult,
};
use crate::graph::{induced_animal, io::parse_graph, GraphWindow, VertexId};
use crate::repulsion::{check_repulsion, generate_hub_graph, Family, HubFamilySpec, PhiFunction};
use crate::temperedness::{
    gamma_series, good_margin, qpn_sequence, vertex_average, GammaSeries, Preset, WeightFunction,
};

/// Pipeline stages in execution order; a run can stop after any of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Generate,
    Check,
    Sequence,
    Gamma,
    Enumerate,
    Experiment,
}

/// Runs every stage.
pub fn run_pipeline(cfg: &ExperimentConfig) -> Report {
    run_until(cfg, &[], Stage::Experiment)
}

/// Runs a validated config up to `stage`, echoing its warnings.
pub fn run_validated(v: &Validated, stage: Stage) -> Report {
    run_until(&v.config, &v.warnings, stage)
}

pub fn run_until(cfg: &ExperimentConfig, warnings: &[String], stage: Stage) -> Report {
    let echo = serde_json::to_string(cfg).expect("config serializes");
    let mut r = Report::new(echo, cfg.seed);
    r.warnings = warnings.to_vec();
    let _ = Run { cfg, r: &mut r }.go(stage);
    r
}

/// Builds or loads the configured graph, with a short description of its source.
pub fn build_window(cfg: &ExperimentConfig) -> Result<(GraphWindow, String), String> {
    let hubs = |spec: HubFamilySpec| generate_hub_graph(&spec).map_err(|e| e.to_string());
    match &cfg.graph {
        GraphSource::Window { name } => {
            let mut spec = match name.as_str() {
                "cubic" => HubFamilySpec::cubic_window(),
                _ => HubFamilySpec::default_window(),
            };
            spec.phi = cfg.phi.clone();
            spec.n_star = cfg.n_star;
            spec.family = cfg.family;
            Ok((hubs(spec)?, format!("window {name}")))
        }
        GraphSource::Hubs { spine_length, hubs: list } => {
            let spec = HubFamilySpec {
                spine_length: *spine_length,
                hubs: list.clone(),
                n_star: cfg.n_star,
                phi: cfg.phi.clone(),
                family: cfg.family,
            };
            Ok((hubs(spec)?, format!("{} hubs on a spine of {spine_length}", list.len())))
        }
        GraphSource::File { path } => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            let w = parse_graph(&text).map_err(|e| e.to_string())?;
            Ok((w, format!("file {path}")))
        }
    }
}

/// Marker for "stop here"; the reason is already in the report.
struct Halt;

struct Run<'a> {
    cfg: &'a ExperimentConfig,
    r: &'a mut Report,
}

fn eq_label(family: Family) -> &'static str {
    match family {
        Family::Minus => "(10qq)",
        Family::Plus => "(10qu)",
    }
}

fn gamma_label(g: &WeightFunction) -> &'static str {
    match g {
        WeightFunction::Log => "(U3)",
        WeightFunction::TLogT => "(U4)",
        _ => "(warR)",
    }
}

/// `q^N`, or its exponent when the power does not fit in an `f64`.
fn power(q: f64, n: u32) -> String {
    let ln = n as f64 * q.ln();
    if ln < 700.0 {
        num(ln.exp())
    } else {
        format!("exp({})", num(ln))
    }
}

impl Run<'_> {
    fn hard<T, E: std::fmt::Display>(&mut self, step: &str, res: Result<T, E>) -> Result<T, Halt> {
        res.map_err(|e| {
            self.r.fail_step(step, e.to_string());
            Halt
        })
    }

    fn go(&mut self, stage: Stage) -> Result<(), Halt> {
        let cfg = self.cfg;
        let detail = format!(
            "kind {} preset {} family {} x {}",
            cfg.experiment.name(),
            cfg.preset,
            cfg.family.name(),
            cfg.x
        );
        let seed = cfg.seed.map(|s| s.to_string()).unwrap_or_default();
        self.r.push("config", "-", None, "seed", seed, Verdict::Info, detail);

        let phi = self.hard("generate", PhiFunction::new(cfg.phi.clone()))?;
        let w = self.generate()?;
        if stage == Stage::Generate {
            return Ok(());
        }
        self.check(&w, &phi)?;
        if stage == Stage::Check {
            return Ok(());
        }
        let radii = self.sequence(&w, &phi)?;
        if stage == Stage::Sequence {
            return Ok(());
        }
        let (preset, gs) = self.gamma(&phi)?;
        if stage == Stage::Gamma {
            return Ok(());
        }
        let q = gs.q();
        self.enumerate(&w, q, &radii)?;
        if stage == Stage::Enumerate {
            return Ok(());
        }
        self.experiment(&w, &phi, &preset, &gs, &radii)
    }

    fn generate(&mut self) -> Result<GraphWindow, Halt> {
        let cfg = self.cfg;
        let (w, source) = self.hard("generate", build_window(cfg))?;
        self.hard("generate", w.check_vertex(cfg.x))?;
        let exact = w
            .exact_radius(cfg.x)
            .map(|r| format!("exact radius {r}"))
            .unwrap_or_else(|| "standalone".into());
        let detail = format!("{source}; {exact}");
        self.r.push("generate", "-", None, w.vertex_count(), w.edge_count(), Verdict::Info, detail);
        Ok(w)
    }

    fn check(&mut self, w: &GraphWindow, phi: &PhiFunction) -> Result<(), Halt> {
        let rep = check_repulsion(w, phi, self.cfg.n_star, self.cfg.family);
        if rep.passed() {
            self.r.push("check", "(7)", None, 0, 0, Verdict::Pass, "no violating pair");
            return Ok(());
        }
        for v in &rep.witnesses {
            let detail = format!("x = {} y = {} violate rho(x,y) >= phi(m)", v.x, v.y);
            self.r.push("check", "(7)", None, v.distance, num(v.required), Verdict::Fail, detail);
        }
        let msg = format!("graph is not repulsive: {} violating pairs", rep.witnesses.len());
        self.r.fail_step("check", msg);
        Err(Halt)
    }

    fn sequence(&mut self, w: &GraphWindow, phi: &PhiFunction) -> Result<Vec<u32>, Halt> {
        let cfg = self.cfg;
        let res = self.hard("sequence", qpn_sequence(w, cfg.x, phi, cfg.n_star, cfg.family))?;
        let label = eq_label(cfg.family);
        for c in &res.checks {
            let detail = "max degree in B_N(x) vs phi^-1";
            self.r.push("sequence", label, Some(c.n), c.max_degree, c.phi_inverse, Verdict::of(c.holds), detail);
        }
        let radii: Vec<u32> = match cfg.family {
            Family::Minus => res.ns.clone(),
            Family::Plus => res.checks.iter().map(|c| c.n).collect(),
        };
        let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        let pivots = res.pivots.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
        let detail = match res.n_x {
            Some(n) => format!("N_x = {n}; pivots {pivots}; exhausted {}", res.exhausted),
            None => format!("N_k = {}; pivots {pivots}; exhausted {}", list(&radii), res.exhausted),
        };
        self.r.push("sequence", "-", None, radii.len(), "", Verdict::Info, detail);
        if radii.is_empty() {
            self.r.fail_step("sequence", "no radius is available from x");
            return Err(Halt);
        }
        Ok(radii)
    }

    fn gamma(&mut self, phi: &PhiFunction) -> Result<(Preset, GammaSeries), Halt> {
        let cfg = self.cfg;
        let preset = self.hard("gamma", Preset::parse(&cfg.preset))?;
        let ts = self.hard("gamma", preset.sequence(cfg.n_star))?;
        let label = gamma_label(&preset.weight);
        let gs = match gamma_series(&preset.weight, phi, &ts, cfg.tol) {
            Ok(gs) => gs,
            Err(e) => {
                let detail = format!("{} with {}", preset.name, ts.rule().name());
                self.r.push("gamma", label, None, "inf", "", Verdict::Fail, detail);
                self.r.fail_step("gamma", format!("refused: {e}"));
                return Err(Halt);
            }
        };
        for (k, s) in gs.partial_sums.iter().take(8).enumerate() {
            self.r.push("gamma", "-", Some(k as u32 + 1), num(*s), "", Verdict::Info, "partial sum");
        }
        let detail = format!(
            "q = {}; {} terms; certificate {:?}",
            num(gs.q()),
            gs.terms_summed,
            gs.certificate
        );
        self.r.push("gamma", label, None, num(gs.gamma), num(gs.tail_bound), Verdict::of(gs.converged), detail);
        if !gs.converged {
            self.r.fail_step("gamma", "tail not certified; gamma unusable");
            return Err(Halt);
        }
        Ok((preset, gs))
    }

    fn counts_paths(&self) -> bool {
        matches!(
            self.cfg.experiment,
            Experiment::Paths { .. } | Experiment::Capacity { .. } | Experiment::Percolation { .. }
        )
    }

    fn enumerate(&mut self, w: &GraphWindow, q: f64, radii: &[u32]) -> Result<(), Halt> {
        let (caps, x) = (self.cfg.caps, self.cfg.x);
        let paths = self.counts_paths();
        let theta = matches!(self.cfg.experiment, Experiment::Paths { theta_walks: true });
        let mut counted = 0;
        for &n in radii {
            let (cap, label) = if paths { (caps.paths, "(g5m)") } else { (caps.animals, "(g5m2)") };
            if n > cap {
                self.r.push("enumerate", label, Some(n), "", "", Verdict::Info, format!("skipped: above cap {cap}"));
                continue;
            }
            counted += 1;
            let c = if paths {
                self.hard("enumerate", count_simple_paths(w, x, n, None))?
            } else {
                self.hard("enumerate", count_animals(w, x, n, None))?
            };
            let v = &verify_exponential_bound(std::slice::from_ref(&c), q, &[n])[0];
            self.r.push("enumerate", label, Some(n), &c.count, power(q, n), Verdict::of(v.passed), "count <= q^N");
            if let Some(b) = c.bound_13 {
                let ln = c.ln_count();
                self.r.push("enumerate", "(13)", Some(n), num(ln), num(b), Verdict::of(ln <= b + 1e-9), "log count <= bound");
            }
            if theta && n <= caps.theta {
                let t = self.hard("enumerate", count_theta_paths(w, x, n))?;
                let (ln, b) = (t.ln_count(), t.bound_12.unwrap_or(f64::NAN));
                self.r.push("enumerate", "(12)", Some(n), num(ln), num(b), Verdict::of(ln <= b + 1e-9), "log theta count <= bound");
            }
        }
        if counted == 0 {
            self.r.warnings.push("no radius within the enumeration caps".into());
        }
        Ok(())
    }

    fn experiment(
        &mut self,
        w: &GraphWindow,
        phi: &PhiFunction,
        preset: &Preset,
        gs: &GammaSeries,
        radii: &[u32],
    ) -> Result<(), Halt> {
        let cfg = self.cfg;
        match &cfg.experiment {
            Experiment::Paths { .. } => {
                self.ball_growth(w, gs.q(), radii)?;
                self.goodness(w, phi, preset, gs, radii)
            }
            Experiment::Animals {} => self.goodness(w, phi, preset, gs, radii),
            Experiment::Capacity { max_order, lambdas } => self.capacity(w, *max_order, lambdas),
            Experiment::Percolation {
                mode,
                p,
                p_scale,
                trials,
                radii: reach,
            } => {
                let p = p.unwrap_or_else(|| p_scale.unwrap_or(0.0) / gs.q());
                self.percolation(w, *mode, p, *trials, reach)
            }
            Experiment::Randic { theta, degrees } => {
                let certs = randic_certificates(*theta, phi, cfg.tol);
                let mut certified = false;
                for c in &certs {
                    let value = c.gamma.map(num).unwrap_or_else(|| "none".into());
                    let detail = format!("g = t^{}; {}", c.exponent, c.detail);
                    certified |= c.gamma.is_some();
                    self.r.push("randic", "(warR)", None, value, "", Verdict::Info, detail);
                }
                if !certified {
                    self.r.push("randic", "(warR)", None, "", "", Verdict::Fail, "no exponent certifies");
                }
                for &n in radii {
                    if n > cfg.caps.animals {
                        continue;
                    }
                    let m = self.hard("randic", randic_max(w, cfg.x, n, *theta, *degrees, &cfg.caps))?;
                    for c in &certs {
                        let (verdict, rhs) = match c.bounds(n, m.value) {
                            Some(b) => (Verdict::of(b), power(c.gamma.unwrap().exp(), n)),
                            None => (Verdict::Info, String::new()),
                        };
                        let detail = format!("g = t^{}; witness {:?}", c.exponent, m.witness);
                        self.r.push("randic", "(radic)", Some(n), num(m.value), rhs, verdict, detail);
                    }
                }
                Ok(())
            }
            Experiment::Greedy {
                model,
                replications,
                y_margin,
            } => {
                let model = self.hard("greedy", WeightModel::new(model.law, model.c, model.scaling))?;
                let y = gs.gamma * model.c + y_margin;
                let seed = cfg.seed.unwrap_or(0);
                let exp = self.hard(
                    "greedy",
                    greedy_growth_experiment(w, cfg.x, radii, &model, *replications, y, gs, seed, &cfg.caps),
                )?;
                for row in &exp.rows {
                    let detail = format!(
                        "Y = {}; t = {}; exceedances {}/{}; mean S/N {}; max S/N {}; envelope {}",
                        num(exp.y),
                        num(exp.t),
                        row.exceedances,
                        exp.replications,
                        num(row.mean_ratio),
                        num(row.max_ratio),
                        num(row.envelope)
                    );
                    let rhs = num(10.0 * row.envelope);
                    self.r.push("greedy", "(ex3)", Some(row.n), num(row.frequency), rhs, Verdict::of(row.within_slack), detail);
                }
                Ok(())
            }
        }
    }

    fn ball_growth(&mut self, w: &GraphWindow, q: f64, radii: &[u32]) -> Result<(), Halt> {
        let rows = self.hard("paths", ball_growth_check(w, self.cfg.x, q, radii))?;
        for b in rows {
            self.r.push("paths", "(U5)", Some(b.n), b.sphere, num(b.q_power), Verdict::of(b.sphere_holds), "|S_N(x)| <= q^N");
            let rhs = num(b.b_x * b.q_power);
            self.r.push("paths", "(U5)", Some(b.n), b.ball, rhs, Verdict::of(b.ball_holds), "|B_N(x)| <= B_x q^N");
        }
        Ok(())
    }

    /// Every animal of each enumerable order is good, and the part of
    /// `G(A; g)` carried by degrees above `t_1` is at most `γ`.
    fn goodness(
        &mut self,
        w: &GraphWindow,
        phi: &PhiFunction,
        preset: &Preset,
        gs: &GammaSeries,
        radii: &[u32],
    ) -> Result<(), Halt> {
        let step = self.cfg.experiment.name();
        let g = &preset.weight;
        let ts = self.hard(step, preset.sequence(self.cfg.n_star))?;
        let t1 = ts.term(1).unwrap_or(0.0);
        for &n in radii {
            if n > self.cfg.caps.animals {
                continue;
            }
            // (animals, not good, max G, max G over degrees > t_1)
            let (total, bad, full, high) = self.hard(
                step,
                fold_animals(
                    w,
                    self.cfg.x,
                    n,
                    || (0u64, 0u64, f64::NEG_INFINITY, f64::NEG_INFINITY),
                    |acc, a| {
                        let n_a = a.iter().map(|&v| w.ambient_degree(v)).max().unwrap_or(0);
                        acc.0 += 1;
                        if !good_margin(a.len(), n_a, phi).0 {
                            acc.1 += 1;
                        }
                        acc.2 = acc.2.max(vertex_average(w, a, g));
                        let upper = a
                            .iter()
                            .map(|&v| w.ambient_degree(v))
                            .filter(|&d| d as f64 > t1)
                            .map(|d| g.at(d))
                            .sum::<f64>()
                            / a.len() as f64;
                        acc.3 = acc.3.max(upper);
                    },
                    |a, b| (a.0 + b.0, a.1 + b.1, a.2.max(b.2), a.3.max(b.3)),
                ),
            )?;
            let detail = format!("{total} animals; not good");
            self.r.push(step, "(14z)", Some(n), bad, 0, Verdict::of(bad == 0), detail);
            let holds = high <= gs.gamma + 1e-9;
            let detail = format!("max G(A; g) over degrees > t_1 = {}", num(t1));
            self.r.push(step, "(110)", Some(n), num(high), num(gs.gamma), Verdict::of(holds), detail);
            let detail = "max G(A; g) over all degrees, including those <= t_1";
            self.r.push(step, "(g2)", Some(n), num(full), "", Verdict::Info, detail);
        }
        Ok(())
    }

    fn capacity(&mut self, w: &GraphWindow, max_order: u32, lambdas: &[f64]) -> Result<(), Halt> {
        let x = self.cfg.x;
        for n in 1..=max_order {
            let mut sets: Vec<Vec<VertexId>> = Vec::new();
            self.hard("capacity", for_each_animal(w, x, n, &mut |a: &[VertexId]| sets.push(a.to_vec())))?;
            for &lambda in lambdas {
                let verdicts = sets
                    .par_iter()
                    .map(|vs| {
                        let a = induced_animal(w, vs)?;
                        Ok(verify_capacity_bounds(&a, lambda)?)
                    })
                    .collect::<Result<Vec<_>, Box<dyn std::error::Error + Send + Sync>>>();
                let verdicts = self.hard("capacity", verdicts)?;
                let max_cap = verdicts.iter().map(|v| v.capacity).max().unwrap_or(0);
                let bad_15 = verdicts.iter().filter(|v| !v.holds_15).count();
                let bad_span = verdicts.iter().filter(|v| !v.holds_span).count();
                let bound_15 = (2.0 * n as f64 / lambda).max(1.0);
                let regime = if lambda > 1.0 { "" } else { "; lambda <= 1 is outside the definition" };
                let detail = format!(
                    "lambda {}; {} animals; {bad_15} violations; {bad_span} spanning violations{regime}",
                    num(lambda),
                    sets.len()
                );
                let verdict = Verdict::of(bad_15 == 0 && bad_span == 0);
                self.r.push("capacity", "(15)", Some(n), max_cap, num(bound_15), verdict, detail);
                let paths: Vec<_> = verdicts.iter().filter(|v| v.holds_14.is_some()).collect();
                if !paths.is_empty() {
                    let bad = paths.iter().filter(|v| v.holds_14 == Some(false)).count();
                    let top = paths.iter().map(|v| v.capacity).max().unwrap_or(0);
                    let bound = 1.0 + (n - 1) as f64 / lambda;
                    let detail = format!("lambda {}; {} path animals; {bad} violations", num(lambda), paths.len());
                    self.r.push("capacity", "(14)", Some(n), top, num(bound), Verdict::of(bad == 0), detail);
                }
            }
        }
        Ok(())
    }

    fn percolation(
        &mut self,
        w: &GraphWindow,
        mode: PercolationMode,
        p: f64,
        trials: u64,
        reach: &[u32],
    ) -> Result<(), Halt> {
        let cfg = self.cfg;
        let pc = PercolationConfig {
            mode,
            p,
            trials,
            reach_radii: reach.to_vec(),
            rng_seed: cfg.seed.unwrap_or(0),
        };
        let table = self.hard("percolate", percolation_run(w, cfg.x, &pc))?;
        let mut counts: Vec<CountResult> = Vec::new();
        for &n in reach {
            if n <= cfg.caps.paths {
                counts.push(self.hard("percolate", count_simple_paths(w, cfg.x, n, None))?);
            }
        }
        let env = percolation_envelope(&table, &counts);
        for row in &table.rows {
            let Some(e) = env.iter().find(|e| e.n == row.n) else {
                let detail = format!("estimate {}; no path count above cap", num(row.estimate));
                self.r.push("percolate", "(2pn)", Some(row.n), num(row.estimate), "", Verdict::Info, detail);
                continue;
            };
            let cond = match row.conditioned {
                Some((c, _)) => format!("; unconditioned {}; conditioned {}", num(row.estimate), num(c)),
                None => String::new(),
            };
            let detail = format!(
                "p = {}; {:?}; reached {}/{}; stderr {}; envelope {}{cond}",
                num(p),
                mode,
                row.reached,
                trials,
                num(e.stderr),
                num(e.bound)
            );
            let rhs = num(e.bound + 3.0 * e.stderr);
            self.r.push("percolate", "(2pn)", Some(row.n), num(e.estimate), rhs, Verdict::of(e.holds), detail);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::validate_config;

    fn config(body: &str) -> Validated {
        validate_config(body).unwrap()
    }

    #[test]
    fn paths_pipeline_on_default_window() {
        let v = config(
            r#"
            [graph]
            source = "window"
            name = "default"
            [caps]
            paths = 120
            animals = 120
            [experiment]
            kind = "paths"
            "#,
        );
        let r = run_validated(&v, Stage::Experiment);
        assert!(r.overall(), "{r:#?}");
        let counted: Vec<u32> = r
            .rows
            .iter()
            .filter(|row| row.equation == "(g5m)" && row.verdict == Verdict::Pass)
            .filter_map(|row| row.n)
            .collect();
        assert_eq!(counted, vec![29, 69, 119]);
        assert!(r.rows.iter().any(|row| row.equation == "(14z)"));
    }

    #[test]
    fn divergent_preset_is_refused_at_gamma() {
        let v = config(
            r#"
            n_star = 2
            preset = "animals-default"
            [graph]
            source = "window"
            name = "default"
            [phi]
            family = "loglog"
            upsilon = 1.0
            epsilon = 1.0
            [experiment]
            kind = "animals"
            "#,
        );
        let r = run_validated(&v, Stage::Experiment);
        let e = r.error.unwrap();
        assert_eq!(e.step, "gamma");
        assert!(e.message.starts_with("refused"), "{}", e.message);
        assert!(!r.rows.iter().any(|row| row.step == "enumerate"));
    }

    #[test]
    fn non_repulsive_file_fails_at_check() {
        let dir = tempfile::tempdir().unwrap();
        // two degree-4 vertices at distance 1
        let text = "10 9\n0 1\n0 2\n0 3\n0 4\n4 5\n4 6\n4 7\n7 8\n8 9\n";
        std::fs::write(dir.path().join("g.txt"), text).unwrap();
        let mut v = config(
            r#"
            n_star = 2
            [graph]
            source = "file"
            path = "g.txt"
            [phi]
            family = "affine"
            slope = 1.0
            intercept = 0.0
            [experiment]
            kind = "paths"
            "#,
        );
        v.config.resolve_paths(dir.path());
        let r = run_validated(&v, Stage::Experiment);
        assert_eq!(r.error.as_ref().unwrap().step, "check");
        let witnesses: Vec<_> = r.rows.iter().filter(|row| row.step == "check").collect();
        assert_eq!(witnesses.len(), 1);
        assert_eq!(witnesses[0].verdict, Verdict::Fail);
        assert!(witnesses[0].detail.contains("x = 0 y = 4"));
    }

    #[test]
    fn stages_stop_early() {
        let v = config(
            r#"
            [graph]
            source = "window"
            name = "default"
            [experiment]
            kind = "paths"
            "#,
        );
        let r = run_validated(&v, Stage::Sequence);
        assert!(r.rows.iter().all(|row| row.step != "gamma"));
        assert!(r.rows.iter().any(|row| row.equation == "(10qq)"));
    }
}
