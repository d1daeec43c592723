//! TOML run configuration. Player and vertex indices are 1-based here and
//! 0-based everywhere else.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use smale_core::game::{free_riding_game, NPlayerPayoffTable};
use smale_core::graph::{self, GameGraph, PayoffQuad, TransitionMatrix};
use smale_core::scalar::{lit, Scalar};
use smale_core::strategy::parse_script;
use smale_core::{Assignment, OpponentPolicy, PayoffBasedStrategy, Rational64};

use crate::game::AnyGame;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub game: GameConfig,
    #[serde(default)]
    pub sim: SimSection,
    #[serde(default)]
    pub players: Vec<PlayerConfig>,
    #[serde(default)]
    pub certify: CertifySection,
    #[serde(default)]
    pub bounds: BoundsSection,
    #[serde(default)]
    pub dynamics: DynamicsSection,
    #[serde(default)]
    pub nash_gap: NashGapSection,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GameConfig {
    Nplayer {
        #[serde(rename = "vC")]
        v_c: Vec<f64>,
        #[serde(rename = "vD")]
        v_d: Vec<f64>,
    },
    FreeRiding {
        #[serde(rename = "N")]
        n: usize,
        f: Vec<f64>,
        c: f64,
    },
    Network {
        #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
        m: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        topology: Option<Topology>,
        /// Undirected pairs.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        edges: Option<Vec<[usize; 2]>>,
        #[serde(rename = "K", default)]
        k: KSpec,
        payoffs: PayoffsConfig,
    },
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    Path,
    Cycle,
    Star,
    Complete,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(untagged)]
pub enum KSpec {
    Named(String),
    Matrix(Vec<Vec<f64>>),
}

impl Default for KSpec {
    fn default() -> Self {
        KSpec::Named("uniform".into())
    }
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PayoffsConfig {
    #[serde(rename = "CD")]
    pub cd: f64,
    #[serde(rename = "DD")]
    pub dd: f64,
    #[serde(rename = "CC")]
    pub cc: f64,
    #[serde(rename = "DC")]
    pub dc: f64,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimSection {
    pub seed: Option<u64>,
    pub horizon: u64,
    pub record_every: Option<u64>,
    pub burn_in: Option<u64>,
    pub replications: usize,
    /// δ of players with no entry in `[[players]]`.
    pub delta: f64,
    /// Slack for the validation inequalities.
    pub tol: f64,
}

impl Default for SimSection {
    fn default() -> Self {
        SimSection {
            seed: None,
            horizon: 100_000,
            record_every: None,
            burn_in: None,
            replications: 20,
            delta: 0.05,
            tol: 0.0,
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum PlayerKind {
    ThresholdGood,
    ContinuousGood,
    Constant,
    AlwaysDefect,
    AlwaysCooperate,
    IidRandom,
    Exploiter,
    Replay,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PlayerConfig {
    pub player: usize,
    pub kind: PlayerKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub band_p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<usize>,
    /// Replay script, relative to the config file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub script: Option<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct CertifySection {
    /// Random states per player for the separation check.
    pub samples: usize,
}

impl Default for CertifySection {
    fn default() -> Self {
        CertifySection { samples: 1000 }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct BoundsSection {
    pub player: usize,
    pub eta: Vec<f64>,
    pub n: Vec<u64>,
}

impl Default for BoundsSection {
    fn default() -> Self {
        BoundsSection {
            player: 1,
            eta: vec![0.5],
            n: vec![2000],
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct DynamicsSection {
    pub player: usize,
    pub h: f64,
    #[serde(rename = "T")]
    pub t_end: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u0: Option<Vec<f64>>,
    /// Diagonal points for the limit check.
    pub samples: usize,
    /// Write every k-th Euler step.
    pub path_every: usize,
}

impl Default for DynamicsSection {
    fn default() -> Self {
        DynamicsSection {
            player: 1,
            h: smale_core::dynamics::DEFAULT_STEP,
            t_end: smale_core::dynamics::DEFAULT_HORIZON,
            u0: None,
            samples: 100,
            path_every: 1,
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct NashGapSection {
    pub deviator: usize,
    pub policies: Vec<PlayerConfig>,
    /// Defaults to `sim.replications`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seeds: Option<usize>,
}

impl Default for NashGapSection {
    fn default() -> Self {
        NashGapSection {
            deviator: 1,
            policies: Vec::new(),
            seeds: None,
        }
    }
}

/// Command-line values that take precedence over the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub horizon: Option<u64>,
    pub replications: Option<usize>,
    pub delta: Option<f64>,
    pub eta: Option<f64>,
    pub tail_n: Option<u64>,
}

impl Config {
    pub fn load(path: &Path) -> Result<(Config, PathBuf)> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let cfg: Config = toml::from_str(&text)
            .with_context(|| format!("parsing config {}", path.display()))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((cfg, base))
    }

    /// Apply overrides and fill in defaults, so the echo is complete.
    pub fn resolve(mut self, o: &Overrides, base: &Path) -> Result<Config> {
        if let Some(s) = o.seed {
            self.sim.seed = Some(s);
        }
        if let Some(h) = o.horizon {
            self.sim.horizon = h;
        }
        if let Some(r) = o.replications {
            self.sim.replications = r;
        }
        if let Some(d) = o.delta {
            self.sim.delta = d;
            for p in &mut self.players {
                if matches!(p.kind, PlayerKind::ThresholdGood | PlayerKind::ContinuousGood) {
                    p.delta = Some(d);
                }
            }
        }
        if let Some(e) = o.eta {
            self.bounds.eta = vec![e];
        }
        if let Some(n) = o.tail_n {
            self.bounds.n = vec![n];
        }
        if self.sim.record_every.is_none() {
            self.sim.record_every = Some((self.sim.horizon / 1000).max(1));
        }
        if self.sim.burn_in.is_none() {
            self.sim.burn_in = Some(self.sim.horizon / 10);
        }
        let m = self.player_count()?;
        let mut seen = vec![false; m];
        for p in &mut self.players {
            if p.player == 0 || p.player > m {
                bail!("player {} out of range 1..={m}", p.player);
            }
            if std::mem::replace(&mut seen[p.player - 1], true) {
                bail!("player {} configured twice", p.player);
            }
            fill_player(p, self.sim.delta, base)?;
        }
        for (i, s) in seen.iter().enumerate() {
            if !s {
                let mut p = PlayerConfig::good(i + 1);
                fill_player(&mut p, self.sim.delta, base)?;
                self.players.push(p);
            }
        }
        self.players.sort_by_key(|p| p.player);
        if self.nash_gap.policies.is_empty() {
            let dev = self.nash_gap.deviator;
            let target = if dev == 1 { 2 } else { 1 };
            self.nash_gap.policies = [PlayerKind::AlwaysDefect, PlayerKind::AlwaysCooperate, PlayerKind::Exploiter]
                .into_iter()
                .map(|kind| PlayerConfig {
                    target: (kind == PlayerKind::Exploiter).then_some(target),
                    ..PlayerConfig::bare(dev, kind)
                })
                .collect();
        }
        let dev = self.nash_gap.deviator;
        for p in &mut self.nash_gap.policies {
            p.player = dev;
            fill_player(p, self.sim.delta, base)?;
        }
        if self.nash_gap.seeds.is_none() {
            self.nash_gap.seeds = Some(self.sim.replications);
        }
        Ok(self)
    }

    pub fn seed(&self) -> Result<u64> {
        self.sim
            .seed
            .ok_or_else(|| anyhow!("no seed: pass --seed or set sim.seed"))
    }

    pub fn player_count(&self) -> Result<usize> {
        Ok(match &self.game {
            GameConfig::Nplayer { v_c, .. } => v_c.len(),
            GameConfig::FreeRiding { n, .. } => *n,
            GameConfig::Network { .. } => self.graph()?.vertex_count(),
        })
    }

    fn graph(&self) -> Result<GameGraph> {
        let GameConfig::Network { m, topology, edges, .. } = &self.game else {
            bail!("not a network game");
        };
        match (topology, edges) {
            (Some(_), Some(_)) => bail!("give either topology or edges, not both"),
            (Some(t), None) => {
                let m = m.ok_or_else(|| anyhow!("topology needs M"))?;
                Ok(match t {
                    Topology::Path => GameGraph::path(m),
                    Topology::Cycle => GameGraph::cycle(m),
                    Topology::Star => GameGraph::star(m),
                    Topology::Complete => GameGraph::complete(m),
                })
            }
            (None, Some(e)) => {
                let max = e.iter().flatten().copied().max().unwrap_or(0);
                let m = m.unwrap_or(max);
                if e.iter().flatten().any(|&v| v == 0 || v > m) {
                    bail!("edge endpoint out of range 1..={m}");
                }
                Ok(GameGraph::undirected(m, e.iter().map(|[a, b]| (a - 1, b - 1))))
            }
            (None, None) => bail!("network game needs topology or edges"),
        }
    }

    /// The game with `f64` payoffs.
    pub fn build_game(&self) -> Result<AnyGame<f64>> {
        match &self.game {
            GameConfig::Network { k: KSpec::Matrix(rows), payoffs, .. } => {
                let g = self.graph()?;
                let k = TransitionMatrix::new(&g, rows.clone(), 1e-9)?;
                Ok(AnyGame::Network(graph::NetworkGame::from_transition(
                    g,
                    k,
                    quad(payoffs, Ok)?,
                )?))
            }
            _ => self.build_with(Ok),
        }
    }

    /// The game with rational payoffs read off the decimal values, or
    /// `None` when `K` is an explicit matrix.
    pub fn build_exact(&self) -> Option<Result<AnyGame<Rational64>>> {
        if let GameConfig::Network { k: KSpec::Matrix(_), .. } = &self.game {
            return None;
        }
        Some(self.build_with(to_rational))
    }

    fn build_with<T: Scalar>(&self, conv: impl Fn(f64) -> Result<T>) -> Result<AnyGame<T>> {
        let all = |xs: &[f64]| xs.iter().map(|&x| conv(x)).collect::<Result<Vec<T>>>();
        Ok(match &self.game {
            GameConfig::Nplayer { v_c, v_d } => AnyGame::NPlayer(NPlayerPayoffTable::new(all(v_c)?, all(v_d)?)?),
            GameConfig::FreeRiding { n, f, c } => AnyGame::NPlayer(free_riding_game(&all(f)?, conv(*c)?, *n)?),
            GameConfig::Network { k, payoffs, .. } => {
                if *k != KSpec::default() {
                    bail!("K must be \"uniform\" or a matrix");
                }
                AnyGame::Network(graph::NetworkGame::uniform(self.graph()?, quad(payoffs, &conv)?, T::zero())?)
            }
        })
    }

    /// Per-player assignments from the resolved player list.
    pub fn assignments<T: Scalar>(&self) -> Result<Vec<Assignment<T>>> {
        self.players.iter().map(|p| p.assignment()).collect()
    }
}

fn quad<T: Scalar>(p: &PayoffsConfig, conv: impl Fn(f64) -> Result<T>) -> Result<PayoffQuad<T>> {
    Ok(PayoffQuad::new(conv(p.cd)?, conv(p.dd)?, conv(p.cc)?, conv(p.dc)?))
}

pub fn to_rational(x: f64) -> Result<Rational64> {
    Rational64::approximate_float(x).ok_or_else(|| anyhow!("{x} has no rational form"))
}

fn fill_player(p: &mut PlayerConfig, default_delta: f64, base: &Path) -> Result<()> {
    match p.kind {
        PlayerKind::ThresholdGood => {
            p.delta.get_or_insert(default_delta);
            p.band_p.get_or_insert(1.0);
        }
        PlayerKind::ContinuousGood => {
            p.delta.get_or_insert(default_delta);
        }
        PlayerKind::Constant | PlayerKind::IidRandom => {
            let q = p.p.ok_or_else(|| anyhow!("player {} needs p", p.player))?;
            if !(0.0..=1.0).contains(&q) {
                bail!("player {}: p = {q} outside [0, 1]", p.player);
            }
        }
        PlayerKind::Exploiter => {
            if p.target.is_none() {
                bail!("exploiter at player {} needs a target", p.player);
            }
            p.delta.get_or_insert(default_delta);
        }
        PlayerKind::Replay => {
            if p.script.is_none() {
                let file = p
                    .file
                    .as_ref()
                    .ok_or_else(|| anyhow!("replay at player {} needs file or script", p.player))?;
                let path = base.join(file);
                let text = std::fs::read_to_string(&path)
                    .with_context(|| format!("reading script {}", path.display()))?;
                p.script = Some(text);
            }
            let text = p.script.as_deref().unwrap_or_default();
            if parse_script(text).is_none() {
                bail!("player {}: script has tokens other than C and D", p.player);
            }
        }
        PlayerKind::AlwaysDefect | PlayerKind::AlwaysCooperate => {}
    }
    if let Some(d) = p.delta {
        if !(d >= 0.0) {
            bail!("player {}: delta must be non-negative", p.player);
        }
    }
    Ok(())
}

impl PlayerConfig {
    fn bare(player: usize, kind: PlayerKind) -> Self {
        PlayerConfig {
            player,
            kind,
            delta: None,
            band_p: None,
            p: None,
            target: None,
            file: None,
            script: None,
        }
    }

    pub fn good(player: usize) -> Self {
        Self::bare(player, PlayerKind::ContinuousGood)
    }

    pub fn is_good(&self) -> bool {
        matches!(self.kind, PlayerKind::ThresholdGood | PlayerKind::ContinuousGood)
    }

    /// Payoff-based strategy for the good and constant kinds.
    pub fn strategy<T: Scalar>(&self) -> Option<PayoffBasedStrategy<T>> {
        let i = self.player - 1;
        let delta = lit(self.delta.unwrap_or(0.0));
        match self.kind {
            PlayerKind::ThresholdGood => Some(PayoffBasedStrategy::threshold(i, delta, lit(self.band_p.unwrap_or(1.0)))),
            PlayerKind::ContinuousGood => Some(PayoffBasedStrategy::continuous(i, delta)),
            PlayerKind::Constant => Some(PayoffBasedStrategy::constant(i, lit(self.p.unwrap_or(0.0)))),
            _ => None,
        }
    }

    /// A payoff-based stand-in for the memoryless policies, as used by the
    /// dynamics. Exploiter and replay have none.
    pub fn as_constant<T: Scalar>(&self) -> Option<PayoffBasedStrategy<T>> {
        let i = self.player - 1;
        match self.kind {
            PlayerKind::AlwaysDefect => Some(PayoffBasedStrategy::constant(i, T::zero())),
            PlayerKind::AlwaysCooperate => Some(PayoffBasedStrategy::constant(i, T::one())),
            PlayerKind::IidRandom => Some(PayoffBasedStrategy::constant(i, lit(self.p.unwrap_or(0.0)))),
            _ => self.strategy(),
        }
    }

    pub fn policy<T: Scalar>(&self) -> Result<Option<OpponentPolicy<T>>> {
        Ok(Some(match self.kind {
            PlayerKind::AlwaysDefect => OpponentPolicy::AlwaysDefect,
            PlayerKind::AlwaysCooperate => OpponentPolicy::AlwaysCooperate,
            PlayerKind::IidRandom => OpponentPolicy::IidRandom {
                p: lit(self.p.unwrap_or(0.0)),
            },
            PlayerKind::Exploiter => OpponentPolicy::Exploiter {
                target: self.target.unwrap_or(1) - 1,
                delta: lit(self.delta.unwrap_or(0.0)),
            },
            PlayerKind::Replay => OpponentPolicy::Replay {
                script: parse_script(self.script.as_deref().unwrap_or_default())
                    .ok_or_else(|| anyhow!("bad replay script"))?,
            },
            _ => return Ok(None),
        }))
    }

    pub fn assignment<T: Scalar>(&self) -> Result<Assignment<T>> {
        if let Some(s) = self.strategy() {
            return Ok(Assignment::Strategy(s));
        }
        Ok(Assignment::Policy(self.policy()?.expect("every kind is a strategy or a policy")))
    }
}
