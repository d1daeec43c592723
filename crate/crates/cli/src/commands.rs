use anyhow::{anyhow, bail, Result};
use serde::Serialize;
use serde_json::json;

use smale_core::approach::{
    bcor_certify, sample_state_space, separation_check, tail_table, BandSet, Certificate,
};
use smale_core::dynamics::{
    diagonal_limit_check, euler_integrate, DiagonalReport, Nature, Selection, SelectionField,
};
use smale_core::engine::{
    nash_gap, replicate, replication_seed, rng_from_seed, run, sup_distance, NashGapResult, SimConfig,
};
use smale_core::game::{StateSpace, DEFAULT_ENUMERATION_CAP};
use smale_core::{PdGame, Rational64, Trace, ValidationReport};

use crate::config::Config;
use crate::game::AnyGame;
use crate::output::{write_trace_csv, Emitter, Tracked};

/// Whether a command's checks held. Errors are reported separately.
pub struct Outcome {
    pub ok: bool,
}

pub struct Context<'a> {
    pub cfg: &'a Config,
    pub out: &'a std::path::Path,
}

impl Context<'_> {
    fn echo(&self) -> serde_json::Value {
        serde_json::to_value(self.cfg).expect("config serialises")
    }

    fn sim_config(&self) -> Result<SimConfig<f64>> {
        let mut sim = SimConfig::new(self.cfg.assignments()?, self.cfg.sim.horizon, self.cfg.seed()?);
        sim.record_every = self.cfg.sim.record_every.unwrap_or(sim.record_every);
        sim.burn_in = self.cfg.sim.burn_in;
        Ok(sim)
    }

    fn game(&self) -> Result<AnyGame<f64>> {
        let game = self.cfg.build_game()?;
        let report = game.validate(self.cfg.sim.tol);
        if !report.passed {
            log::warn!(
                "game fails validation ({} violations); results carry no guarantees",
                report.violations.len()
            );
        }
        Ok(game)
    }

    /// Good players with their bands `Λ^i(δ_i)`.
    fn tracked(&self, game: &AnyGame<f64>) -> Vec<Tracked> {
        self.cfg
            .players
            .iter()
            .filter(|p| p.is_good())
            .map(|p| Tracked {
                player: p.player - 1,
                band: BandSet::for_player(game, p.player - 1, p.delta.unwrap_or(0.0)),
            })
            .collect()
    }

    fn write_trace(&self, em: &mut Emitter, name: &str, trace: &Trace<f64>, game: &AnyGame<f64>) -> Result<()> {
        let tracked = self.tracked(game);
        em.csv(name, |f| write_trace_csv(f, trace, game, &tracked))
    }
}

pub fn validate(cx: &Context) -> Result<Outcome> {
    let report: ValidationReport = match cx.cfg.build_exact() {
        Some(exact) => exact?.validate(crate::config::to_rational(cx.cfg.sim.tol)?),
        None => cx.cfg.build_game()?.validate(cx.cfg.sim.tol),
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    let mut em = Emitter::new(cx.out)?;
    em.json("validation.json", &report)?;
    em.finish("validate", cx.cfg.sim.seed, cx.echo())?;
    Ok(Outcome { ok: report.passed })
}

#[derive(Serialize)]
struct PlayerStat {
    player: usize,
    min: f64,
    max: f64,
    mu_min: f64,
    mu_max: f64,
}

fn run_summary(trace: &Trace<f64>, game: &AnyGame<f64>) -> serde_json::Value {
    let last = trace.last();
    let stats: Vec<PlayerStat> = (0..trace.players)
        .map(|i| PlayerStat {
            player: i + 1,
            min: trace.extremes[i].min,
            max: trace.extremes[i].max,
            mu_min: trace.mu_extremes[i].min,
            mu_max: trace.mu_extremes[i].max,
        })
        .collect();
    json!({
        "seed": trace.seed,
        "rows": trace.len(),
        "burnIn": trace.burn_in,
        "final": last.map(|r| json!({
            "n": r.n,
            "u": r.u,
            "actions": r.actions.iter().map(|a| a.as_char().to_string()).collect::<String>(),
            "playerPayoffs": (0..game.player_count()).map(|i| game.player_payoff(i, r.u)).collect::<Vec<_>>(),
            "mu": (0..game.player_count()).map(|i| game.mu(i, r.u)).collect::<Vec<_>>(),
            "distVstar": sup_distance(r.u, &game.mutual_cooperation()),
        })),
        "postBurnIn": stats,
        "distance": "slab",
    })
}

pub fn simulate(cx: &Context) -> Result<Outcome> {
    let game = cx.game()?;
    let sim = cx.sim_config()?;
    let trace = run(&game, &sim)?;
    let mut em = Emitter::new(cx.out)?;
    cx.write_trace(&mut em, "trace.csv", &trace, &game)?;
    em.json("summary.json", &run_summary(&trace, &game))?;
    let m = em.finish("simulate", Some(sim.seed), cx.echo())?;
    for (name, sum) in &m.outputs {
        println!("{sum}  {name}");
    }
    Ok(Outcome { ok: true })
}

fn space_for(game: &AnyGame<f64>) -> Result<StateSpace<f64>> {
    Ok(StateSpace::enumerate(game, DEFAULT_ENUMERATION_CAP)?)
}

pub fn replicate_cmd(cx: &Context) -> Result<Outcome> {
    let game = cx.game()?;
    let sim = cx.sim_config()?;
    let r = cx.cfg.sim.replications;
    let ens = replicate(&game, &sim, r)?;
    let mut em = Emitter::new(cx.out)?;
    let width = r.to_string().len();
    for (k, trace) in ens.traces.iter().enumerate() {
        cx.write_trace(&mut em, &format!("trace_{:0width$}.csv", k + 1), trace, &game)?;
    }
    let space = space_for(&game).ok();
    let ns: Vec<u64> = cx.cfg.bounds.n.iter().copied().filter(|&n| n <= sim.horizon).collect();
    let mut tails = Vec::new();
    if let Some(space) = &space {
        for t in cx.tracked(&game) {
            let table = tail_table(&ens, space, &t.band, &ns, &cx.cfg.bounds.eta)?;
            tails.push(json!({"player": t.player + 1, "table": table}));
        }
    }
    let summary = json!({
        "masterSeed": ens.master_seed,
        "seeds": ens.seeds,
        "config": cx.echo(),
        "runs": ens.traces.iter().map(|t| run_summary(t, &game)).collect::<Vec<_>>(),
        "tailFrequencies": tails,
        "distance": "slab",
    });
    em.json("summary.json", &summary)?;
    em.finish("replicate", Some(sim.seed), cx.echo())?;
    println!("{} replications written to {}", r, cx.out.display());
    Ok(Outcome { ok: true })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SeparationSummary {
    samples: usize,
    max_inner: f64,
    failures: usize,
    first_failure: Option<smale_core::approach::SeparationReport>,
}

pub fn certify(cx: &Context) -> Result<Outcome> {
    let game = cx.cfg.build_game()?;
    let exact = cx.cfg.build_exact().transpose()?;
    let space = space_for(&game).ok();
    let mut rng = rng_from_seed(cx.cfg.sim.seed.unwrap_or(0));
    let mut ok = true;
    let mut players = Vec::new();
    for p in cx.cfg.players.iter().filter(|p| p.strategy::<f64>().is_some()) {
        let i = p.player - 1;
        let delta = p.delta.unwrap_or(cx.cfg.sim.delta);
        let cert: Certificate = match &exact {
            Some(g) => {
                let s = p.strategy::<Rational64>().unwrap();
                let d = crate::config::to_rational(delta)?;
                bcor_certify(g, &s, &BandSet::for_player(g, i, d))?
            }
            None => {
                let s = p.strategy::<f64>().unwrap();
                bcor_certify(&game, &s, &BandSet::for_player(&game, i, delta))?
            }
        };
        let strat = p.strategy::<f64>().unwrap();
        let band = BandSet::for_player(&game, i, delta);
        let separation = match &space {
            Some(space) => {
                let mut sum = SeparationSummary {
                    samples: cx.cfg.certify.samples,
                    max_inner: f64::NEG_INFINITY,
                    failures: 0,
                    first_failure: None,
                };
                for _ in 0..cx.cfg.certify.samples {
                    let x = sample_state_space(space, &mut rng);
                    let rep = separation_check(&game, &strat, &band, &x, 1e-9)?;
                    sum.max_inner = sum.max_inner.max(rep.max_inner);
                    if !rep.passed {
                        sum.failures += 1;
                        sum.first_failure.get_or_insert(rep);
                    }
                }
                Some(sum)
            }
            None => None,
        };
        let passed = cert.certified && separation.as_ref().is_none_or(|s| s.failures == 0);
        if !passed {
            ok = false;
            eprintln!("player {}: band not certified", p.player);
            for w in &cert.witnesses {
                eprintln!(
                    "  witness: a = {}, b = {}, mu = {} vs {}",
                    w.action, w.opponents, w.value, w.bound
                );
            }
            for f in &cert.commitment_failures {
                eprintln!("  commitment: {f}");
            }
        } else {
            println!("player {}: certified", p.player);
        }
        players.push(json!({
            "player": p.player,
            "delta": delta,
            "certificate": cert,
            "separation": separation,
        }));
    }
    let mut em = Emitter::new(cx.out)?;
    em.json(
        "certify.json",
        &json!({"exact": exact.is_some(), "players": players, "distance": "slab"}),
    )?;
    em.finish("certify", cx.cfg.sim.seed, cx.echo())?;
    Ok(Outcome { ok })
}

pub fn bounds(cx: &Context) -> Result<Outcome> {
    let game = cx.game()?;
    let sim = cx.sim_config()?;
    let b = &cx.cfg.bounds;
    let p = cx
        .cfg
        .players
        .get(b.player.wrapping_sub(1))
        .ok_or_else(|| anyhow!("bounds.player {} out of range", b.player))?;
    let delta = p.delta.unwrap_or(cx.cfg.sim.delta);
    let band = BandSet::for_player(&game, p.player - 1, delta);
    if let Some(&n) = b.n.iter().find(|&&n| n > sim.horizon) {
        bail!("tail n = {n} exceeds the horizon {}", sim.horizon);
    }
    let space = space_for(&game)?;
    let ens = replicate(&game, &sim, cx.cfg.sim.replications)?;
    let table = tail_table(&ens, &space, &band, &b.n, &b.eta)?;
    println!("n,eta,frequency,corrected,bound_i,bound_ii");
    for e in &table.entries {
        println!(
            "{},{},{},{},{},{}",
            e.n, e.eta, e.frequency, e.corrected_frequency, e.bound_i, e.bound_ii
        );
    }
    let mut em = Emitter::new(cx.out)?;
    em.json(
        "bounds.json",
        &json!({"player": p.player, "delta": delta, "seeds": ens.seeds, "table": table}),
    )?;
    em.finish("bounds", Some(sim.seed), cx.echo())?;
    Ok(Outcome { ok: true })
}

pub fn dynamics(cx: &Context) -> Result<Outcome> {
    let game = cx.game()?;
    let d = &cx.cfg.dynamics;
    let me = cx
        .cfg
        .players
        .get(d.player.wrapping_sub(1))
        .ok_or_else(|| anyhow!("dynamics.player {} out of range", d.player))?;
    let strategy = me
        .strategy::<f64>()
        .ok_or_else(|| anyhow!("dynamics.player must follow a payoff-based strategy"))?;
    let others = cx
        .cfg
        .players
        .iter()
        .filter(|p| p.player != me.player)
        .map(|p| {
            p.as_constant::<f64>()
                .ok_or_else(|| anyhow!("player {}: {:?} has no payoff-based form", p.player, p.kind))
        })
        .collect::<Result<Vec<_>>>()?;
    let space = space_for(&game)?;
    let u0 = match &d.u0 {
        Some(u) if u.len() == game.payoff_dim() => u.clone(),
        Some(u) => bail!("u0 has {} coordinates, expected {}", u.len(), game.payoff_dim()),
        None => {
            let k = space.vertices.len() as f64;
            (0..space.dim())
                .map(|c| space.points().map(|p| p[c]).sum::<f64>() / k)
                .collect()
        }
    };
    let field = SelectionField {
        game: &game,
        selection: Selection {
            strategy,
            nature: Nature::Players(others),
        },
    };
    let path = euler_integrate(&field, &u0, d.h, d.t_end, Some(&space))?;
    let mut em = Emitter::new(cx.out)?;
    em.csv("path.csv", |f| {
        use std::io::Write;
        let mut w = std::io::BufWriter::new(f);
        writeln!(w, "t,{}", game.coord_names().join(","))?;
        let last = path.states.len() - 1;
        for (k, (t, s)) in path.times.iter().zip(&path.states).enumerate() {
            if k % d.path_every.max(1) != 0 && k != last {
                continue;
            }
            write!(w, "{t:.16e}")?;
            for x in s {
                write!(w, ",{x:.16e}")?;
            }
            writeln!(w)?;
        }
        w.flush()?;
        Ok(())
    })?;
    let end = path.last().unwrap_or(&u0);
    let diagonal: Option<DiagonalReport> = match cx.cfg.build_exact().transpose()? {
        Some(AnyGame::NPlayer(t)) => {
            let s = me.strategy::<Rational64>().unwrap();
            Some(diagonal_limit_check(&t, &s, d.samples, cx.cfg.sim.seed.unwrap_or(0))?)
        }
        _ => None,
    };
    let ok = diagonal.as_ref().is_none_or(|r| r.unique);
    if let Some(r) = diagonal.as_ref().filter(|r| !r.unique) {
        eprintln!("diagonal check failed: {} ties, {} sign violations", r.ties.len(), r.sign_violations.len());
    }
    em.json(
        "dynamics.json",
        &json!({
            "player": me.player,
            "h": d.h,
            "T": d.t_end,
            "u0": u0,
            "final": end,
            "distVstar": sup_distance(end, &game.mutual_cooperation()),
            "diagonal": diagonal,
        }),
    )?;
    em.finish("dynamics", cx.cfg.sim.seed, cx.echo())?;
    println!("final distance to v*: {}", sup_distance(end, &game.mutual_cooperation()));
    Ok(Outcome { ok })
}

pub fn nash_gap_cmd(cx: &Context) -> Result<Outcome> {
    let game = cx.game()?;
    let sim = cx.sim_config()?;
    let ng = &cx.cfg.nash_gap;
    let dev = ng.deviator.wrapping_sub(1);
    if dev >= game.player_count() {
        bail!("nash_gap.deviator {} out of range", ng.deviator);
    }
    if cx.cfg.players.iter().any(|p| !p.is_good()) {
        log::warn!("baseline has players that are not good; the thresholds assume all-good play");
    }
    let delta = cx
        .cfg
        .players
        .iter()
        .filter(|p| p.is_good())
        .filter_map(|p| p.delta)
        .fold(0.0, f64::max);
    let m = game.player_count() as f64;
    let threshold = if game.is_network() {
        (m - 1.0) * delta / 2.0
    } else {
        delta * (m - 1.0)
    };
    let seeds: Vec<u64> = (1..=ng.seeds.unwrap_or(cx.cfg.sim.replications) as u64)
        .map(|r| replication_seed(sim.seed, r))
        .collect();
    let mut results: Vec<NashGapResult> = Vec::new();
    for p in &ng.policies {
        let policy = p
            .policy::<f64>()?
            .ok_or_else(|| anyhow!("deviation {:?} is not a policy", p.kind))?;
        let res = nash_gap(&game, &sim, dev, &policy, &seeds)?;
        println!("{}: max gap {} (threshold {threshold})", res.policy, res.max_gap);
        results.push(res);
    }
    let mut em = Emitter::new(cx.out)?;
    em.json(
        "nash_gap.json",
        &json!({
            "deviator": ng.deviator,
            "delta": delta,
            "threshold": threshold,
            "seeds": seeds,
            "results": results,
        }),
    )?;
    em.finish("nash-gap", Some(sim.seed), cx.echo())?;
    Ok(Outcome { ok: true })
}
