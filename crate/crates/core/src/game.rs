//! N-player Prisoner's Dilemma games.
//!
//! A game is the pair of payoff lists `v_c[k]`, `v_d[k]`: the payoff to a
//! cooperator (resp. defector) when `k` of its `N - 1` opponents cooperate.
//! Payoff vectors live in `R^N`, one coordinate per player.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Deref, DerefMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{count, norm_sq, to_f64, Real, Scalar};

/// Largest player count for which `{C, D}^N` is enumerated exactly.
pub const DEFAULT_ENUMERATION_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Action {
    C,
    D,
}

impl Action {
    pub fn is_cooperate(self) -> bool {
        self == Action::C
    }

    pub fn as_char(self) -> char {
        match self {
            Action::C => 'C',
            Action::D => 'D',
        }
    }

    pub fn from_char(c: char) -> Option<Action> {
        match c {
            'C' | 'c' => Some(Action::C),
            'D' | 'd' => Some(Action::D),
            _ => None,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// One action per player.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ActionProfile(pub Vec<Action>);

impl ActionProfile {
    /// Profile number `index` of `{C, D}^n` in lexicographic order (C < D),
    /// so index 0 is all-C and the first player is the most significant.
    pub fn from_index(n: usize, index: u64) -> Self {
        ActionProfile(
            (0..n)
                .map(|i| {
                    if (index >> (n - 1 - i)) & 1 == 0 {
                        Action::C
                    } else {
                        Action::D
                    }
                })
                .collect(),
        )
    }

    /// All `2^n` profiles. Callers enforce the enumeration cap.
    pub fn all(n: usize) -> impl Iterator<Item = ActionProfile> {
        (0..1u64 << n).map(move |idx| ActionProfile::from_index(n, idx))
    }

    pub fn uniform(n: usize, a: Action) -> Self {
        ActionProfile(vec![a; n])
    }

    /// Insert `a` at position `player` into an opponent profile.
    pub fn with_player(player: usize, a: Action, opponents: &[Action]) -> Self {
        let mut v = Vec::with_capacity(opponents.len() + 1);
        v.extend_from_slice(&opponents[..player]);
        v.push(a);
        v.extend_from_slice(&opponents[player..]);
        ActionProfile(v)
    }

    pub fn cooperators(&self) -> usize {
        self.0.iter().filter(|a| a.is_cooperate()).count()
    }

    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(Action::from_char)
            .collect::<Option<Vec<_>>>()
            .map(ActionProfile)
    }
}

impl Deref for ActionProfile {
    type Target = [Action];

    fn deref(&self) -> &[Action] {
        &self.0
    }
}

impl fmt::Display for ActionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.0 {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// A point of payoff space: per-player for N-player games, per directed edge
/// for network games.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StateVector<T>(pub Vec<T>);

impl<T: Scalar> StateVector<T> {
    pub fn zeros(dim: usize) -> Self {
        StateVector(vec![T::zero(); dim])
    }

    pub fn into_inner(self) -> Vec<T> {
        self.0
    }

    pub fn norm(&self) -> T
    where
        T: Real,
    {
        norm_sq(&self.0).sqrt()
    }
}

impl<T> Deref for StateVector<T> {
    type Target = [T];

    fn deref(&self) -> &[T] {
        &self.0
    }
}

impl<T> DerefMut for StateVector<T> {
    fn deref_mut(&mut self) -> &mut [T] {
        &mut self.0
    }
}

impl<T> From<Vec<T>> for StateVector<T> {
    fn from(v: Vec<T>) -> Self {
        StateVector(v)
    }
}

/// Where a validation failure was observed.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Opponent-count index `k`.
    Index(usize),
    /// A directed edge or vertex pair (0-based).
    Pair(usize, usize),
    Vertex(usize),
    Profile(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub condition: String,
    pub witness: Witness,
    pub lhs: f64,
    pub rhs: f64,
}

/// Outcome of a structural check. `passed` iff `violations` is empty;
/// `flags` and `advisories` carry conditions that are reported but never
/// fail validation.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
    pub flags: BTreeMap<String, bool>,
    pub advisories: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        ValidationReport {
            passed: true,
            ..Default::default()
        }
    }

    pub fn violate(&mut self, condition: &str, witness: Witness, lhs: f64, rhs: f64) {
        self.passed = false;
        self.violations.push(Violation {
            condition: condition.to_string(),
            witness,
            lhs,
            rhs,
        });
    }

    pub fn advise(&mut self, condition: &str, witness: Witness, lhs: f64, rhs: f64) {
        self.advisories.push(Violation {
            condition: condition.to_string(),
            witness,
            lhs,
            rhs,
        });
    }

    /// Fold another report into this one.
    pub fn merge(&mut self, other: ValidationReport) {
        self.passed &= other.passed;
        self.violations.extend(other.violations);
        self.flags.extend(other.flags);
        self.advisories.extend(other.advisories);
    }
}

/// Common surface of the two game families, used by the simulator,
/// certification and dynamics code.
pub trait PdGame<T: Scalar>: Send + Sync {
    fn player_count(&self) -> usize;

    fn payoff_dim(&self) -> usize;

    /// Write `U(s)` into `out` (length [`payoff_dim`](Self::payoff_dim)).
    fn payoff_into(&self, s: &[Action], out: &mut [T]);

    fn payoff(&self, s: &[Action]) -> StateVector<T> {
        let mut out = StateVector::zeros(self.payoff_dim());
        self.payoff_into(s, &mut out);
        out
    }

    /// Coefficient vector of the linear functional μ^i.
    fn mu_coefficients(&self, player: usize) -> Vec<T>;

    fn mu(&self, player: usize, u: &[T]) -> T;

    /// Scalar payoff of a player read off a state: `u_i` for N-player games,
    /// the K-weighted mean payoff for network games.
    fn player_payoff(&self, player: usize, u: &[T]) -> T;

    fn coord_names(&self) -> Vec<String>;

    /// `U(C, ..., C)`.
    fn mutual_cooperation(&self) -> StateVector<T> {
        self.payoff(&ActionProfile::uniform(self.player_count(), Action::C))
    }
}

/// Payoff lists of a symmetric N-player Prisoner's Dilemma.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NPlayerPayoffTable<T> {
    v_c: Vec<T>,
    v_d: Vec<T>,
}

impl<T: Scalar> NPlayerPayoffTable<T> {
    pub fn new(v_c: Vec<T>, v_d: Vec<T>) -> Result<Self> {
        if v_c.len() != v_d.len() {
            return Err(Error::DimensionMismatch {
                expected: v_c.len(),
                found: v_d.len(),
            });
        }
        if v_c.len() < 2 {
            return Err(Error::TooFewPlayers(v_c.len()));
        }
        Ok(NPlayerPayoffTable { v_c, v_d })
    }

    /// Two-player game from the usual quadruple.
    pub fn two_player(cd: T, dd: T, cc: T, dc: T) -> Self {
        NPlayerPayoffTable {
            v_c: vec![cd, cc],
            v_d: vec![dd, dc],
        }
    }

    pub fn player_count(&self) -> usize {
        self.v_c.len()
    }

    /// `v(C, k)`.
    pub fn v_c(&self) -> &[T] {
        &self.v_c
    }

    /// `v(D, k)`.
    pub fn v_d(&self) -> &[T] {
        &self.v_d
    }

    pub fn value(&self, a: Action, k: usize) -> T {
        match a {
            Action::C => self.v_c[k],
            Action::D => self.v_d[k],
        }
    }

    /// Left-hand side `k v(C,k-1) + (N-k) v(D,k)` of the Pareto conditions:
    /// the total payoff when exactly `k` players cooperate.
    fn total_with_cooperators(&self, k: usize) -> T {
        let n = self.player_count();
        let cooperators = if k == 0 {
            T::zero()
        } else {
            count::<T>(k) * self.v_c[k - 1]
        };
        cooperators + count::<T>(n - k) * self.v_d[k]
    }
}

impl<T: Scalar> PdGame<T> for NPlayerPayoffTable<T> {
    fn player_count(&self) -> usize {
        self.v_c.len()
    }

    fn payoff_dim(&self) -> usize {
        self.v_c.len()
    }

    fn payoff_into(&self, s: &[Action], out: &mut [T]) {
        debug_assert_eq!(s.len(), self.player_count());
        let total = s.iter().filter(|a| a.is_cooperate()).count();
        for (o, &a) in out.iter_mut().zip(s) {
            let k = if a.is_cooperate() { total - 1 } else { total };
            *o = self.value(a, k);
        }
    }

    fn mu_coefficients(&self, player: usize) -> Vec<T> {
        mu_coefficients_nplayer(self.player_count(), player)
    }

    fn mu(&self, player: usize, u: &[T]) -> T {
        mu_unchecked(player, u)
    }

    fn player_payoff(&self, player: usize, u: &[T]) -> T {
        u[player]
    }

    fn coord_names(&self) -> Vec<String> {
        (1..=self.player_count()).map(|i| format!("u_{i}")).collect()
    }
}

/// Check the dominance, monotonicity and Pareto conditions of an N-player
/// table. Mutual-defection inefficiency is reported in
/// `flags["defection_inefficient"]` and never fails the report.
///
/// `tol` loosens every inequality by that amount (0 = exact comparison).
pub fn validate_npd<T: Scalar>(table: &NPlayerPayoffTable<T>, tol: T) -> ValidationReport {
    let n = table.player_count();
    let mut report = ValidationReport::new();
    let (v_c, v_d) = (table.v_c(), table.v_d());

    for k in 0..n {
        if !(v_c[k] < v_d[k] + tol) {
            report.violate("dominance", Witness::Index(k), to_f64(v_c[k]), to_f64(v_d[k]));
        }
    }
    for k in 0..n - 1 {
        if !(v_d[k] <= v_d[k + 1] + tol) {
            report.violate(
                "monotonicity",
                Witness::Index(k),
                to_f64(v_d[k]),
                to_f64(v_d[k + 1]),
            );
        }
    }
    let optimum = count::<T>(n) * v_c[n - 1];
    let defection = count::<T>(n) * v_d[0];
    let mut inefficient = true;
    for k in 0..n {
        let lhs = table.total_with_cooperators(k);
        if !(lhs <= optimum + tol) {
            report.violate("pareto_optimal", Witness::Index(k), to_f64(lhs), to_f64(optimum));
        }
        if !(lhs + tol >= defection) {
            inefficient = false;
            report.advise(
                "defection_inefficient",
                Witness::Index(k),
                to_f64(lhs),
                to_f64(defection),
            );
        }
    }
    report
        .flags
        .insert("defection_inefficient".to_string(), inefficient);
    report
}

/// `U(s)` for an N-player table.
pub fn npd_payoff<T: Scalar>(
    table: &NPlayerPayoffTable<T>,
    s: &[Action],
) -> Result<StateVector<T>> {
    if s.len() != table.player_count() {
        return Err(Error::DimensionMismatch {
            expected: table.player_count(),
            found: s.len(),
        });
    }
    Ok(table.payoff(s))
}

/// Free-riding game: `v(C,k) = f(k+1) - c`, `v(D,k) = f(k)` for a public good
/// `f` on `0..=n` contributors and contribution cost `c`.
pub fn free_riding_game<T: Scalar>(f: &[T], c: T, n: usize) -> Result<NPlayerPayoffTable<T>> {
    if n < 2 {
        return Err(Error::TooFewPlayers(n));
    }
    if f.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            found: f.len(),
        });
    }
    if !(c > T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "contribution cost must be positive, got {c:?}"
        )));
    }
    if let Some(k) = f.iter().position(|&x| x < T::zero()) {
        return Err(Error::FreeRiding {
            k,
            reason: format!("f({k}) = {:?} is negative", f[k]),
        });
    }
    let lower = c / count::<T>(n);
    for k in 0..n {
        let inc = f[k + 1] - f[k];
        if inc < lower {
            return Err(Error::FreeRiding {
                k,
                reason: format!("increment {inc:?} below c/N = {lower:?}"),
            });
        }
        if !(inc < c) {
            return Err(Error::FreeRiding {
                k,
                reason: format!("increment {inc:?} not below c = {c:?}"),
            });
        }
    }
    let v_c = (0..n).map(|k| f[k + 1] - c).collect();
    let v_d = f[..n].to_vec();
    NPlayerPayoffTable::new(v_c, v_d)
}

fn mu_unchecked<T: Scalar>(i: usize, u: &[T]) -> T {
    let n = u.len();
    let others = u
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .fold(T::zero(), |acc, (_, &x)| acc + x);
    u[i] - others / count::<T>(n - 1)
}

/// `μ^i(u) = u_i - (1/(N-1)) Σ_{j≠i} u_j`, with `i` 0-based.
pub fn mu_nplayer<T: Scalar>(i: usize, u: &[T]) -> Result<T> {
    if u.len() < 2 {
        return Err(Error::TooFewPlayers(u.len()));
    }
    if i >= u.len() {
        return Err(Error::PlayerOutOfRange {
            index: i,
            players: u.len(),
        });
    }
    Ok(mu_unchecked(i, u))
}

pub fn mu_coefficients_nplayer<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    let other = T::zero() - T::one() / count::<T>(n - 1);
    (0..n)
        .map(|j| if j == i { T::one() } else { other })
        .collect()
}

/// Pure-profile payoff vectors, the vertex set of the state space `E`.
#[derive(Clone, Debug)]
pub struct StateSpace<T> {
    pub vertices: Vec<(ActionProfile, StateVector<T>)>,
}

impl<T: Scalar> StateSpace<T> {
    /// Enumerate `U(s)` over all `2^M` profiles, duplicates kept.
    pub fn enumerate<G: PdGame<T> + ?Sized>(game: &G, cap: usize) -> Result<Self> {
        let m = game.player_count();
        if m > cap {
            return Err(Error::EnumerationCap { players: m, cap });
        }
        let vertices = ActionProfile::all(m)
            .map(|s| {
                let u = game.payoff(&s);
                (s, u)
            })
            .collect();
        Ok(StateSpace { vertices })
    }

    pub fn points(&self) -> impl Iterator<Item = &[T]> + '_ {
        self.vertices.iter().map(|(_, u)| u.as_ref())
    }

    pub fn dim(&self) -> usize {
        self.vertices.first().map_or(0, |(_, u)| u.len())
    }

    pub fn max_norm_sq(&self) -> T {
        self.points()
            .map(norm_sq)
            .fold(T::zero(), crate::scalar::max)
    }

    /// `|E| = sup { ||v|| : v ∈ E }`, attained at a vertex.
    pub fn max_norm(&self) -> T
    where
        T: Real,
    {
        self.max_norm_sq().sqrt()
    }
}

/// `state_space_vertices` for N-player tables.
pub fn state_space_vertices<T: Scalar>(
    table: &NPlayerPayoffTable<T>,
    cap: usize,
) -> Result<StateSpace<T>> {
    StateSpace::enumerate(table, cap)
}
