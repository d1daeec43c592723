//! Payoff-based strategies and opponent policies.
//!
//! A δ-good strategy for player `i` cooperates whenever `μ^i(u) >= 0` and
//! defects whenever `μ^i(u) < -δ`; the two variants here differ only on the
//! band `[-δ, 0)`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{Action, PdGame};
use crate::scalar::{max, min, Scalar};

/// A distribution over `{C, D}`, stored as the cooperation probability.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ActionDist<T> {
    coop: T,
}

impl<T: Scalar> ActionDist<T> {
    /// `p` is clamped into `[0, 1]`.
    pub fn new(p: T) -> Self {
        ActionDist {
            coop: min(max(p, T::zero()), T::one()),
        }
    }

    pub fn cooperate() -> Self {
        ActionDist { coop: T::one() }
    }

    pub fn defect() -> Self {
        ActionDist { coop: T::zero() }
    }

    pub fn prob(&self, a: Action) -> T {
        match a {
            Action::C => self.coop,
            Action::D => T::one() - self.coop,
        }
    }

    pub fn p_cooperate(&self) -> T {
        self.coop
    }

    pub fn p_defect(&self) -> T {
        T::one() - self.coop
    }
}

/// User-supplied rule `(u, μ^i(u)) -> P(C)`. Before the first payoff `u` is
/// empty and `μ` is zero.
#[derive(Clone)]
pub struct CustomRule<T>(pub Arc<dyn Fn(&[T], T) -> T + Send + Sync>);

impl<T> fmt::Debug for CustomRule<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("CustomRule")
    }
}

#[derive(Clone, Debug)]
pub enum StrategyKind<T> {
    /// Step rule; plays C with probability `band_p` on `[-δ, 0)`.
    ThresholdGood { band_p: T },
    /// Linear ramp `P(C) = clamp((μ + δ) / δ, 0, 1)`.
    ContinuousGood,
    /// Ignores the state.
    Constant { p: T },
    Custom(CustomRule<T>),
}

#[derive(Clone, Debug)]
pub struct PayoffBasedStrategy<T> {
    /// 0-based.
    pub player: usize,
    pub kind: StrategyKind<T>,
    pub delta: T,
}

impl<T: Scalar> PayoffBasedStrategy<T> {
    pub fn threshold(player: usize, delta: T, band_p: T) -> Self {
        PayoffBasedStrategy {
            player,
            kind: StrategyKind::ThresholdGood { band_p },
            delta,
        }
    }

    /// At `δ = 0` no continuous rule satisfies both commitments; the
    /// strategy then behaves as the threshold rule.
    pub fn continuous(player: usize, delta: T) -> Self {
        if delta == T::zero() {
            log::warn!("continuous good strategy with delta = 0 falls back to the threshold rule");
        }
        PayoffBasedStrategy {
            player,
            kind: StrategyKind::ContinuousGood,
            delta,
        }
    }

    pub fn constant(player: usize, p: T) -> Self {
        PayoffBasedStrategy {
            player,
            kind: StrategyKind::Constant { p },
            delta: T::zero(),
        }
    }

    pub fn custom(player: usize, delta: T, rule: impl Fn(&[T], T) -> T + Send + Sync + 'static) -> Self {
        PayoffBasedStrategy {
            player,
            kind: StrategyKind::Custom(CustomRule(Arc::new(rule))),
            delta,
        }
    }

    /// True for the kinds whose output depends on `u` only through `μ^i(u)`.
    pub fn is_mu_based(&self) -> bool {
        matches!(
            self.kind,
            StrategyKind::ThresholdGood { .. } | StrategyKind::ContinuousGood | StrategyKind::Constant { .. }
        )
    }

    /// `Q_u` given `u` and `μ = μ^i(u)`.
    pub fn distribution_at(&self, u: &[T], mu: T) -> ActionDist<T> {
        let delta = self.delta;
        match &self.kind {
            StrategyKind::ThresholdGood { band_p } => threshold_rule(mu, delta, *band_p),
            StrategyKind::ContinuousGood if delta > T::zero() => {
                ActionDist::new((mu + delta) / delta)
            }
            // δ = 0: the band is empty, so the band probability is irrelevant
            StrategyKind::ContinuousGood => threshold_rule(mu, delta, T::one()),
            StrategyKind::Constant { p } => ActionDist::new(*p),
            StrategyKind::Custom(rule) => ActionDist::new((rule.0)(u, mu)),
        }
    }

    /// Mixed action for a μ-based kind. Custom rules see an empty state.
    pub fn distribution_for_mu(&self, mu: T) -> ActionDist<T> {
        self.distribution_at(&[], mu)
    }
}

fn threshold_rule<T: Scalar>(mu: T, delta: T, band_p: T) -> ActionDist<T> {
    if mu >= T::zero() {
        ActionDist::cooperate()
    } else if mu < T::zero() - delta {
        ActionDist::defect()
    } else {
        ActionDist::new(band_p)
    }
}

/// `Q_u` for the strategy's player. `u = None` means no payoff has been
/// observed yet, in which case `μ` is taken to be zero.
pub fn strategy_distribution<T: Scalar, G: PdGame<T> + ?Sized>(
    strat: &PayoffBasedStrategy<T>,
    game: &G,
    u: Option<&[T]>,
) -> ActionDist<T> {
    match u {
        Some(u) => strat.distribution_at(u, game.mu(strat.player, u)),
        None => strat.distribution_at(&[], T::zero()),
    }
}

/// Flat record of past action profiles.
#[derive(Clone, Debug, Default)]
pub struct ActionLog {
    players: usize,
    data: Vec<Action>,
}

impl ActionLog {
    pub fn new(players: usize) -> Self {
        ActionLog {
            players,
            data: Vec::new(),
        }
    }

    pub fn push(&mut self, profile: &[Action]) {
        debug_assert_eq!(profile.len(), self.players);
        self.data.extend_from_slice(profile);
    }

    pub fn rounds(&self) -> usize {
        if self.players == 0 {
            0
        } else {
            self.data.len() / self.players
        }
    }

    /// Profile of round `k` (0-based).
    pub fn round(&self, k: usize) -> &[Action] {
        &self.data[k * self.players..(k + 1) * self.players]
    }

    pub fn last(&self) -> Option<&[Action]> {
        self.rounds().checked_sub(1).map(|k| self.round(k))
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Action]> + '_ {
        self.data.chunks(self.players.max(1))
    }
}

/// What a player may condition on before round `n + 1`.
#[derive(Clone, Copy, Debug)]
pub struct History<'a, T> {
    pub n: u64,
    /// `u_n`, absent before the first round.
    pub u: Option<&'a [T]>,
    /// Scalar payoff of every player at `u_n`.
    pub player_payoffs: Option<&'a [T]>,
    pub actions: &'a ActionLog,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OpponentPolicy<T> {
    AlwaysDefect,
    AlwaysCooperate,
    IidRandom { p: T },
    /// Defects while its running payoff leads `target`'s by less than
    /// `delta`, cooperates otherwise.
    Exploiter { target: usize, delta: T },
    /// Scripted actions, one per round.
    Replay { script: Vec<Action> },
}

/// Parse a replay script: `C`/`D` tokens separated by whitespace, commas or
/// nothing. Lines starting with `#` are ignored.
pub fn parse_script(text: &str) -> Option<Vec<Action>> {
    text.lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .flat_map(|l| l.chars())
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(Action::from_char)
        .collect()
}

/// Mixed action of a policy for `player` given the visible history.
pub fn policy_distribution<T: Scalar>(
    pol: &OpponentPolicy<T>,
    player: usize,
    history: &History<'_, T>,
) -> Result<ActionDist<T>> {
    Ok(match pol {
        OpponentPolicy::AlwaysDefect => ActionDist::defect(),
        OpponentPolicy::AlwaysCooperate => ActionDist::cooperate(),
        OpponentPolicy::IidRandom { p } => ActionDist::new(*p),
        OpponentPolicy::Exploiter { target, delta } => {
            let lead = history
                .player_payoffs
                .map_or(T::zero(), |pp| pp[player] - pp[*target]);
            if lead < *delta {
                ActionDist::defect()
            } else {
                ActionDist::cooperate()
            }
        }
        OpponentPolicy::Replay { script } => {
            let step = history.n as usize;
            match script.get(step) {
                Some(&Action::C) => ActionDist::cooperate(),
                Some(&Action::D) => ActionDist::defect(),
                None => {
                    return Err(Error::ReplayExhausted {
                        step: step + 1,
                        len: script.len(),
                    })
                }
            }
        }
    })
}

/// What drives one player in a simulation.
#[derive(Clone, Debug)]
pub enum Assignment<T> {
    Strategy(PayoffBasedStrategy<T>),
    Policy(OpponentPolicy<T>),
}

impl<T: Scalar> Assignment<T> {
    pub fn distribution<G: PdGame<T> + ?Sized>(
        &self,
        game: &G,
        player: usize,
        history: &History<'_, T>,
    ) -> Result<ActionDist<T>> {
        match self {
            Assignment::Strategy(s) => Ok(strategy_distribution(s, game, history.u)),
            Assignment::Policy(p) => policy_distribution(p, player, history),
        }
    }

    /// True when the assignment reads only `u_n`.
    pub fn is_payoff_based(&self) -> bool {
        matches!(
            self,
            Assignment::Strategy(_)
                | Assignment::Policy(
                    OpponentPolicy::AlwaysCooperate
                        | OpponentPolicy::AlwaysDefect
                        | OpponentPolicy::IidRandom { .. }
                )
        )
    }
}
