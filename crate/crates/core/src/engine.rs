//! Repeated-game simulator.
//!
//! Each round every player draws its action independently from its
//! assignment evaluated on the history so far; the cumulative average
//! payoff is then updated with `u_{n+1} = u_n + (U(s_{n+1}) - u_n) / (n + 1)`
//! using compensated summation.
//!
//! Randomness: ChaCha8 seeded through `rand`'s `seed_from_u64`. One uniform
//! draw per player per round, in player order. Replication `r` (1-based) of
//! an ensemble with master seed `s` uses seed `splitmix64(s + r)`.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::approach::{slab_distance, BandSet};
use crate::error::{Error, Result};
use crate::game::{Action, ActionProfile, PdGame};
use crate::scalar::{count, to_f64, Kahan, Real};
use crate::strategy::{ActionLog, Assignment, History, OpponentPolicy};

pub type SimRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finaliser.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of replication `r` (1-based).
pub fn replication_seed(master: u64, r: u64) -> u64 {
    splitmix64(master.wrapping_add(r))
}

#[derive(Clone, Debug)]
pub struct SimConfig<T> {
    /// One entry per player, in player order.
    pub assignments: Vec<Assignment<T>>,
    pub horizon: u64,
    pub seed: u64,
    pub record_every: u64,
    /// Defaults to `horizon / 10`.
    pub burn_in: Option<u64>,
}

impl<T: Real> SimConfig<T> {
    pub fn new(assignments: Vec<Assignment<T>>, horizon: u64, seed: u64) -> Self {
        SimConfig {
            assignments,
            horizon,
            seed,
            record_every: (horizon / 1000).max(1),
            burn_in: None,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        SimConfig {
            seed,
            ..self.clone()
        }
    }

    pub fn burn_in(&self) -> u64 {
        self.burn_in.unwrap_or(self.horizon / 10)
    }

    pub fn validate<G: PdGame<T> + ?Sized>(&self, game: &G) -> Result<()> {
        if self.horizon < 1 {
            return Err(Error::InvalidParameter("horizon must be at least 1".into()));
        }
        if self.record_every < 1 {
            return Err(Error::InvalidParameter("record_every must be at least 1".into()));
        }
        if self.assignments.len() != game.player_count() {
            return Err(Error::DimensionMismatch {
                expected: game.player_count(),
                found: self.assignments.len(),
            });
        }
        for (i, a) in self.assignments.iter().enumerate() {
            match a {
                Assignment::Strategy(s) if s.player != i => {
                    return Err(Error::InvalidParameter(format!(
                        "strategy for player {} assigned to slot {}",
                        s.player + 1,
                        i + 1
                    )))
                }
                Assignment::Policy(OpponentPolicy::Exploiter { target, .. })
                    if *target >= game.player_count() || *target == i =>
                {
                    return Err(Error::InvalidParameter(format!(
                        "exploiter at player {} has invalid target {}",
                        i + 1,
                        target + 1
                    )))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// Running minimum and maximum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Extremes<T> {
    pub min: T,
    pub max: T,
}

impl<T: Real> Extremes<T> {
    pub fn empty() -> Self {
        Extremes {
            min: T::infinity(),
            max: T::neg_infinity(),
        }
    }

    pub fn observe(&mut self, x: T) {
        self.min = self.min.min(x);
        self.max = self.max.max(x);
    }

    pub fn is_empty(&self) -> bool {
        self.min > self.max
    }
}

/// Mutable simulation state.
#[derive(Clone, Debug)]
pub struct SimState<T> {
    pub n: u64,
    u: Vec<Kahan<T>>,
    u_plain: Vec<T>,
    player_payoffs: Vec<T>,
    pub log: ActionLog,
}

impl<T: Real> SimState<T> {
    pub fn new(players: usize, dim: usize) -> Self {
        SimState {
            n: 0,
            u: vec![Kahan::new(T::zero()); dim],
            u_plain: vec![T::zero(); dim],
            player_payoffs: vec![T::zero(); players],
            log: ActionLog::new(players),
        }
    }

    /// `u_n`, `None` before the first round.
    pub fn u(&self) -> Option<&[T]> {
        (self.n > 0).then_some(self.u_plain.as_slice())
    }

    pub fn player_payoffs(&self) -> Option<&[T]> {
        (self.n > 0).then_some(self.player_payoffs.as_slice())
    }

    pub fn history(&self) -> History<'_, T> {
        History {
            n: self.n,
            u: self.u(),
            player_payoffs: self.player_payoffs(),
            actions: &self.log,
        }
    }
}

/// Draw `s_{n+1}` from the product of the players' mixed actions without
/// touching the state.
pub fn sample_profile<T: Real, G: PdGame<T> + ?Sized>(
    game: &G,
    assignments: &[Assignment<T>],
    state: &SimState<T>,
    rng: &mut SimRng,
    out: &mut Vec<Action>,
) -> Result<()> {
    out.clear();
    let history = state.history();
    for (i, a) in assignments.iter().enumerate() {
        let p = to_f64(a.distribution(game, i, &history)?.p_cooperate());
        let x: f64 = rng.random();
        out.push(if x < p { Action::C } else { Action::D });
    }
    Ok(())
}

/// Play one round and update the running average.
pub fn step<T: Real, G: PdGame<T> + ?Sized>(
    game: &G,
    assignments: &[Assignment<T>],
    state: &mut SimState<T>,
    rng: &mut SimRng,
    scratch: &mut StepScratch<T>,
) -> Result<()> {
    sample_profile(game, assignments, state, rng, &mut scratch.profile)?;
    apply_profile(game, state, &scratch.profile, &mut scratch.payoff);
    Ok(())
}

/// Reusable buffers for [`step`].
#[derive(Clone, Debug, Default)]
pub struct StepScratch<T> {
    pub profile: Vec<Action>,
    pub payoff: Vec<T>,
}

impl<T: Real> StepScratch<T> {
    pub fn new(dim: usize) -> Self {
        StepScratch {
            profile: Vec::new(),
            payoff: vec![T::zero(); dim],
        }
    }
}

/// Incremental average update with a given profile.
pub fn apply_profile<T: Real, G: PdGame<T> + ?Sized>(
    game: &G,
    state: &mut SimState<T>,
    profile: &[Action],
    payoff: &mut [T],
) {
    game.payoff_into(profile, payoff);
    let next = count::<T>(state.n as usize + 1);
    for ((acc, plain), &x) in state.u.iter_mut().zip(state.u_plain.iter_mut()).zip(payoff.iter()) {
        acc.add((x - acc.value()) / next);
        *plain = acc.value();
    }
    state.n += 1;
    state.log.push(profile);
    for i in 0..state.player_payoffs.len() {
        state.player_payoffs[i] = game.player_payoff(i, &state.u_plain);
    }
}

/// Recomputes `u_n = (1/n) Σ_k U(s_k)` from the action log, grouping equal
/// profiles so each distinct payoff vector is added once with its count.
pub fn average_from_log<T: Real, G: PdGame<T> + ?Sized>(game: &G, log: &ActionLog) -> Vec<T> {
    let mut counts: HashMap<&[Action], u64> = HashMap::new();
    for s in log.iter() {
        *counts.entry(s).or_default() += 1;
    }
    let n = count::<T>(log.rounds());
    let mut keyed: Vec<_> = counts.into_iter().collect();
    keyed.sort();
    let mut total = vec![Kahan::new(T::zero()); game.payoff_dim()];
    for (s, c) in keyed {
        let u = game.payoff(s);
        for (acc, &x) in total.iter_mut().zip(u.iter()) {
            acc.add(x * count::<T>(c as usize));
        }
    }
    total.iter().map(|k| k.value() / n).collect()
}

/// Recorded rows in struct-of-arrays layout.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trace<T> {
    pub seed: u64,
    pub players: usize,
    pub dim: usize,
    pub burn_in: u64,
    pub n: Vec<u64>,
    actions: Vec<Action>,
    u: Vec<T>,
    /// Per-player scalar payoff extremes over every round `n >= burn_in`.
    pub extremes: Vec<Extremes<T>>,
    /// Extremes of `μ^i(u_n)` over the same rounds.
    pub mu_extremes: Vec<Extremes<T>>,
}

#[derive(Clone, Copy, Debug)]
pub struct TraceRow<'a, T> {
    pub n: u64,
    pub actions: &'a [Action],
    pub u: &'a [T],
}

impl<T: Real> Trace<T> {
    fn new(seed: u64, players: usize, dim: usize, burn_in: u64) -> Self {
        Trace {
            seed,
            players,
            dim,
            burn_in,
            n: Vec::new(),
            actions: Vec::new(),
            u: Vec::new(),
            extremes: vec![Extremes::empty(); players],
            mu_extremes: vec![Extremes::empty(); players],
        }
    }

    fn record(&mut self, n: u64, actions: &[Action], u: &[T]) {
        self.n.push(n);
        self.actions.extend_from_slice(actions);
        self.u.extend_from_slice(u);
    }

    pub fn len(&self) -> usize {
        self.n.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n.is_empty()
    }

    pub fn row(&self, k: usize) -> TraceRow<'_, T> {
        TraceRow {
            n: self.n[k],
            actions: &self.actions[k * self.players..(k + 1) * self.players],
            u: &self.u[k * self.dim..(k + 1) * self.dim],
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = TraceRow<'_, T>> + '_ {
        (0..self.len()).map(move |k| self.row(k))
    }

    pub fn last(&self) -> Option<TraceRow<'_, T>> {
        self.len().checked_sub(1).map(|k| self.row(k))
    }

    /// An empty trace with the same shape, for header-only output.
    pub fn empty_like(&self) -> Self {
        Trace::new(self.seed, self.players, self.dim, self.burn_in)
    }
}

/// Owns the state and generator of one run.
pub struct Simulator<'g, T, G: ?Sized> {
    game: &'g G,
    assignments: Vec<Assignment<T>>,
    state: SimState<T>,
    rng: SimRng,
    scratch: StepScratch<T>,
}

impl<'g, T: Real, G: PdGame<T> + ?Sized> Simulator<'g, T, G> {
    pub fn new(game: &'g G, config: &SimConfig<T>) -> Result<Self> {
        config.validate(game)?;
        Ok(Simulator {
            game,
            assignments: config.assignments.clone(),
            state: SimState::new(game.player_count(), game.payoff_dim()),
            rng: rng_from_seed(config.seed),
            scratch: StepScratch::new(game.payoff_dim()),
        })
    }

    pub fn step(&mut self) -> Result<()> {
        step(
            self.game,
            &self.assignments,
            &mut self.state,
            &mut self.rng,
            &mut self.scratch,
        )
    }

    pub fn state(&self) -> &SimState<T> {
        &self.state
    }

    pub fn last_profile(&self) -> &[Action] {
        &self.scratch.profile
    }
}

/// Run `horizon` rounds, recording `n = 1`, every multiple of
/// `record_every`, and the final round.
pub fn run<T: Real, G: PdGame<T> + ?Sized>(game: &G, config: &SimConfig<T>) -> Result<Trace<T>> {
    let mut sim = Simulator::new(game, config)?;
    let burn_in = config.burn_in();
    let mut trace = Trace::new(config.seed, game.player_count(), game.payoff_dim(), burn_in);
    for _ in 0..config.horizon {
        sim.step()?;
        let n = sim.state.n;
        if n >= burn_in {
            for (e, &p) in trace.extremes.iter_mut().zip(&sim.state.player_payoffs) {
                e.observe(p);
            }
            for (i, e) in trace.mu_extremes.iter_mut().enumerate() {
                e.observe(game.mu(i, &sim.state.u_plain));
            }
        }
        if n == 1 || n % config.record_every == 0 || n == config.horizon {
            trace.record(n, &sim.scratch.profile, &sim.state.u_plain);
        }
    }
    Ok(trace)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Ensemble<T> {
    pub master_seed: u64,
    pub seeds: Vec<u64>,
    pub traces: Vec<Trace<T>>,
}

/// `r` independent runs, in parallel on the current rayon pool.
pub fn replicate<T: Real, G: PdGame<T> + ?Sized>(
    game: &G,
    config: &SimConfig<T>,
    r: usize,
) -> Result<Ensemble<T>> {
    if r < 1 {
        return Err(Error::InvalidParameter("at least one replication".into()));
    }
    config.validate(game)?;
    let seeds: Vec<u64> = (1..=r as u64)
        .map(|k| replication_seed(config.seed, k))
        .collect();
    let traces = seeds
        .par_iter()
        .map(|&s| run(game, &config.with_seed(s)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ensemble {
        master_seed: config.seed,
        seeds,
        traces,
    })
}

/// Which sets and aggregates [`metrics`] evaluates.
#[derive(Clone, Debug)]
pub struct MetricSpec<T> {
    /// Players whose `μ^i` is reported.
    pub tracked_players: Vec<usize>,
    pub bands: Vec<BandSet<T>>,
    /// Weights for `Σ_j w_j ū^j`, e.g. `π_j` over the non-good players.
    pub payoff_weights: Option<Vec<T>>,
    pub burn_in: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricRow<T> {
    pub n: u64,
    pub mu: Vec<T>,
    pub band_distance: Vec<T>,
    /// `max_i |u_i - ū|` with `ū` the coordinate mean.
    pub dist_diag: T,
    /// `||u - U(C,...,C)||_∞`.
    pub dist_vstar: T,
    pub player_payoffs: Vec<T>,
    pub weighted_payoff: Option<T>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricSeries<T> {
    pub rows: Vec<MetricRow<T>>,
    /// Player payoff extremes over recorded rows with `n >= burn_in`.
    pub extremes: Vec<Extremes<T>>,
    pub weighted_extremes: Option<Extremes<T>>,
}

pub fn dist_diag<T: Real>(u: &[T]) -> T {
    let mean = u.iter().fold(T::zero(), |a, &x| a + x) / count::<T>(u.len());
    u.iter().fold(T::zero(), |a, &x| a.max((x - mean).abs()))
}

pub fn sup_distance<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |m, (&x, &y)| m.max((x - y).abs()))
}

pub fn metrics<T: Real, G: PdGame<T> + ?Sized>(
    trace: &Trace<T>,
    game: &G,
    spec: &MetricSpec<T>,
) -> MetricSeries<T> {
    let v_star = game.mutual_cooperation();
    let mut extremes = vec![Extremes::empty(); game.player_count()];
    let mut weighted_extremes = spec.payoff_weights.as_ref().map(|_| Extremes::empty());
    let rows = trace
        .rows()
        .map(|row| {
            let player_payoffs: Vec<T> = (0..game.player_count())
                .map(|i| game.player_payoff(i, row.u))
                .collect();
            let weighted_payoff = spec.payoff_weights.as_ref().map(|w| {
                w.iter()
                    .zip(&player_payoffs)
                    .fold(T::zero(), |a, (&w, &p)| a + w * p)
            });
            if row.n >= spec.burn_in {
                for (e, &p) in extremes.iter_mut().zip(&player_payoffs) {
                    e.observe(p);
                }
                if let (Some(e), Some(w)) = (weighted_extremes.as_mut(), weighted_payoff) {
                    e.observe(w);
                }
            }
            MetricRow {
                n: row.n,
                mu: spec.tracked_players.iter().map(|&i| game.mu(i, row.u)).collect(),
                band_distance: spec.bands.iter().map(|b| slab_distance(b, row.u)).collect(),
                dist_diag: dist_diag(row.u),
                dist_vstar: sup_distance(row.u, &v_star),
                player_payoffs,
                weighted_payoff,
            }
        })
        .collect();
    MetricSeries {
        rows,
        extremes,
        weighted_extremes,
    }
}

/// Outcome of one unilateral deviation experiment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NashGapRun {
    pub seed: u64,
    /// Post-burn-in maximum of the deviator's payoff when deviating.
    pub deviant_limsup: f64,
    /// Post-burn-in minimum of the same player's payoff under the baseline.
    pub baseline_liminf: f64,
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NashGapResult {
    pub deviator: usize,
    pub policy: String,
    pub runs: Vec<NashGapRun>,
    pub max_gap: f64,
}

/// Compare the deviator's long-run payoff under `baseline` with the payoff
/// it gets when its assignment is replaced by `deviation`, one pair of runs
/// per seed.
pub fn nash_gap<T: Real, G: PdGame<T> + ?Sized>(
    game: &G,
    baseline: &SimConfig<T>,
    deviator: usize,
    deviation: &OpponentPolicy<T>,
    seeds: &[u64],
) -> Result<NashGapResult> {
    if deviator >= game.player_count() {
        return Err(Error::PlayerOutOfRange {
            index: deviator,
            players: game.player_count(),
        });
    }
    let mut deviant = baseline.clone();
    deviant.assignments[deviator] = Assignment::Policy(deviation.clone());
    let runs = seeds
        .par_iter()
        .map(|&seed| {
            let base = run(game, &baseline.with_seed(seed))?;
            let dev = run(game, &deviant.with_seed(seed))?;
            let deviant_limsup = to_f64(dev.extremes[deviator].max);
            let baseline_liminf = to_f64(base.extremes[deviator].min);
            Ok(NashGapRun {
                seed,
                deviant_limsup,
                baseline_liminf,
                gap: deviant_limsup - baseline_liminf,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_gap = runs.iter().map(|r| r.gap).fold(f64::NEG_INFINITY, f64::max);
    Ok(NashGapResult {
        deviator,
        policy: policy_label(deviation),
        runs,
        max_gap,
    })
}

pub fn policy_label<T>(p: &OpponentPolicy<T>) -> String {
    match p {
        OpponentPolicy::AlwaysDefect => "always_defect",
        OpponentPolicy::AlwaysCooperate => "always_cooperate",
        OpponentPolicy::IidRandom { .. } => "iid_random",
        OpponentPolicy::Exploiter { .. } => "exploiter",
        OpponentPolicy::Replay { .. } => "replay",
    }
    .to_string()
}

/// Profile of every player cooperating.
pub fn all_cooperate(n: usize) -> ActionProfile {
    ActionProfile::uniform(n, Action::C)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::NPlayerPayoffTable;
    use crate::strategy::PayoffBasedStrategy;

    fn classic() -> NPlayerPayoffTable<f64> {
        NPlayerPayoffTable::two_player(0.0, 1.0, 3.0, 4.0)
    }

    fn free_riding3() -> NPlayerPayoffTable<f64> {
        NPlayerPayoffTable::new(vec![-0.5, 0.5, 1.5], vec![0.0, 1.0, 2.0]).unwrap()
    }

    #[test]
    fn two_steps_by_hand() {
        let game = classic();
        let config = SimConfig::new(
            vec![
                Assignment::Strategy(PayoffBasedStrategy::threshold(0, 0.1, 1.0)),
                Assignment::Policy(OpponentPolicy::AlwaysDefect),
            ],
            2,
            0,
        );
        let mut sim = Simulator::new(&game, &config).unwrap();
        sim.step().unwrap();
        assert_eq!(sim.last_profile(), &[Action::C, Action::D]);
        assert_eq!(sim.state().u().unwrap(), &[0.0, 4.0]);
        sim.step().unwrap();
        assert_eq!(sim.last_profile(), &[Action::D, Action::D]);
        assert_eq!(sim.state().u().unwrap(), &[0.5, 2.5]);
    }

    #[test]
    fn constant_cooperation_is_constant() {
        let game = free_riding3();
        let config = SimConfig::new(
            vec![Assignment::Policy(OpponentPolicy::AlwaysCooperate); 3],
            500,
            9,
        );
        let trace = run(&game, &config).unwrap();
        assert!(trace.rows().all(|r| r.u == [1.5, 1.5, 1.5]));
    }

    #[test]
    fn row_schedule() {
        let game = classic();
        let mut config = SimConfig::new(
            vec![Assignment::Policy(OpponentPolicy::IidRandom { p: 0.5 }); 2],
            1000,
            3,
        );
        config.record_every = 100;
        let trace = run(&game, &config).unwrap();
        assert_eq!(trace.len(), 11);
        assert_eq!(trace.n[0], 1);
        assert_eq!(trace.n[10], 1000);
        config.record_every = 300;
        let trace = run(&game, &config).unwrap();
        assert_eq!(trace.n, vec![1, 300, 600, 900, 1000]);
    }

    #[test]
    fn determinism_and_seed_sensitivity() {
        let game = classic();
        let config = SimConfig::new(
            vec![
                Assignment::Strategy(PayoffBasedStrategy::continuous(0, 0.2)),
                Assignment::Policy(OpponentPolicy::IidRandom { p: 0.4 }),
            ],
            5000,
            11,
        );
        let a = run(&game, &config).unwrap();
        let b = run(&game, &config).unwrap();
        assert_eq!(a, b);
        let c = run(&game, &config.with_seed(12)).unwrap();
        assert_ne!(a.u, c.u);
    }

    #[test]
    fn replicate_matches_single_runs() {
        let game = classic();
        let config = SimConfig::new(
            vec![Assignment::Policy(OpponentPolicy::IidRandom { p: 0.5 }); 2],
            200,
            5,
        );
        let e = replicate(&game, &config, 1).unwrap();
        assert_eq!(e.traces.len(), 1);
        assert_eq!(e.traces[0], run(&game, &config.with_seed(e.seeds[0])).unwrap());
        let e1 = replicate(&game, &config, 4).unwrap();
        let e2 = replicate(&game, &config, 4).unwrap();
        assert_eq!(e1, e2);
        assert!(replicate(&game, &config, 0).is_err());
    }

    #[test]
    fn config_validation() {
        let game = classic();
        let ok = vec![Assignment::Policy(OpponentPolicy::AlwaysDefect); 2];
        assert!(run(&game, &SimConfig::new(ok.clone(), 0, 1)).is_err());
        assert!(run(&game, &SimConfig::new(ok[..1].to_vec(), 10, 1)).is_err());
        let misplaced = vec![
            Assignment::Strategy(PayoffBasedStrategy::continuous(1, 0.1)),
            Assignment::Policy(OpponentPolicy::AlwaysDefect),
        ];
        assert!(run(&game, &SimConfig::new(misplaced, 10, 1)).is_err());
        let replay = vec![
            Assignment::Policy(OpponentPolicy::Replay { script: vec![Action::C; 3] }),
            Assignment::Policy(OpponentPolicy::AlwaysDefect),
        ];
        assert!(matches!(
            run(&game, &SimConfig::new(replay, 4, 1)),
            Err(Error::ReplayExhausted { step: 4, len: 3 })
        ));
    }

    #[test]
    fn metric_examples() {
        assert_eq!(dist_diag(&[1.5, 1.5, 1.5]), 0.0);
        assert_eq!(dist_diag(&[0.5, 0.5, 2.0]), 1.0);
        assert_eq!(sup_distance(&[1.5; 3], &free_riding3().mutual_cooperation()), 0.0);
    }

    #[test]
    fn incremental_matches_recomputed_average() {
        let game = free_riding3();
        let config = SimConfig::new(
            vec![
                Assignment::Strategy(PayoffBasedStrategy::continuous(0, 0.05)),
                Assignment::Policy(OpponentPolicy::IidRandom { p: 0.7 }),
                Assignment::Policy(OpponentPolicy::IidRandom { p: 0.2 }),
            ],
            100_000,
            2,
        );
        let mut sim = Simulator::new(&game, &config).unwrap();
        for _ in 0..100_000 {
            sim.step().unwrap();
        }
        let scratch = average_from_log(&game, &sim.state().log);
        for (a, b) in scratch.iter().zip(sim.state().u().unwrap()) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }
}
