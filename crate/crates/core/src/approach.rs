//! Band sets `Λ = {u ∈ E : α <= μ(u) <= β}` and their certification as
//! Blackwell B-sets for a payoff-based strategy.
//!
//! Distances to `Λ` are measured to the slab `{α <= μ <= β}`, which bounds
//! `d(u, Λ)` from below and is exact whenever the slab projection of `u`
//! stays in `E`.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_distr::Exp1;
use serde::Serialize;

use crate::engine::Ensemble;
use crate::error::{Error, Result};
use crate::game::{Action, ActionProfile, PdGame, StateSpace, StateVector};
use crate::scalar::{dot, lit, norm_sq, to_f64, Real, Scalar};
use crate::strategy::{strategy_distribution, PayoffBasedStrategy, StrategyKind};

/// Opponent profiles beyond this count are not enumerated (`2^16`).
pub const PROFILE_CAP: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BandSet<T> {
    pub mu: Vec<T>,
    pub alpha: T,
    pub beta: T,
}

impl<T: Scalar> BandSet<T> {
    /// Endpoints are reordered so that `alpha <= beta`.
    pub fn new(mu: Vec<T>, a: T, b: T) -> Result<Self> {
        if norm_sq(&mu) == T::zero() {
            return Err(Error::InvalidParameter("band functional is zero".into()));
        }
        let (alpha, beta) = if a <= b { (a, b) } else { (b, a) };
        Ok(BandSet { mu, alpha, beta })
    }

    /// `Λ^i(δ) = {u ∈ E : -δ <= μ^i(u) <= 0}`.
    pub fn for_player<G: PdGame<T> + ?Sized>(game: &G, player: usize, delta: T) -> Self {
        BandSet::new(game.mu_coefficients(player), T::zero() - delta, T::zero())
            .expect("μ^i is never the zero functional")
    }

    pub fn value(&self, u: &[T]) -> T {
        dot(&self.mu, u)
    }

    pub fn contains(&self, u: &[T]) -> bool {
        let m = self.value(u);
        self.alpha <= m && m <= self.beta
    }
}

/// Euclidean distance from `u` to the slab.
pub fn slab_distance<T: Real>(band: &BandSet<T>, u: &[T]) -> T {
    let m = band.value(u);
    let excess = (m - band.beta).max(band.alpha - m).max(T::zero());
    excess / norm_sq(&band.mu).sqrt()
}

/// Orthogonal projection of `x` onto the slab.
pub fn slab_projection<T: Real>(band: &BandSet<T>, x: &[T]) -> Vec<T> {
    let m = band.value(x);
    let target = m.max(band.alpha).min(band.beta);
    let scale = (m - target) / norm_sq(&band.mu);
    x.iter().zip(&band.mu).map(|(&xi, &ci)| xi - scale * ci).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertWitness {
    /// Action of the certified player.
    pub action: Action,
    /// Opponent profile in player order.
    pub opponents: String,
    pub value: f64,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub certified: bool,
    pub a1: Action,
    pub a2: Action,
    /// Level the `a1` payoffs must stay below.
    pub alpha: f64,
    /// Level the `a2` payoffs must stay above.
    pub beta: f64,
    pub witnesses: Vec<CertWitness>,
    pub profiles_checked: usize,
    /// Strategy commitments that do not hold.
    pub commitment_failures: Vec<String>,
}

/// Every opponent profile of `player`, in lexicographic order.
pub fn opponent_profiles(players: usize) -> Result<impl Iterator<Item = ActionProfile>> {
    let others = players - 1;
    if others >= usize::BITS as usize || (1usize << others) > PROFILE_CAP {
        return Err(Error::EnumerationCap {
            players,
            cap: PROFILE_CAP.trailing_zeros() as usize + 1,
        });
    }
    Ok(ActionProfile::all(others))
}

/// Exhaustive check that the band is a B-set for `strat` by the two-action
/// criterion: with `a1 = C` and `a2 = D`, every `μ(U(C, b))` must be at most
/// the upper end of the band and every `μ(U(D, b))` at least the lower end;
/// and the strategy must play C strictly above the band and D strictly below.
/// Exact when `T` is a rational type.
pub fn bcor_certify<T: Scalar, G: PdGame<T> + ?Sized>(
    game: &G,
    strat: &PayoffBasedStrategy<T>,
    band: &BandSet<T>,
) -> Result<Certificate> {
    let player = strat.player;
    let m = game.player_count();
    if player >= m {
        return Err(Error::PlayerOutOfRange {
            index: player,
            players: m,
        });
    }
    let (upper, lower) = (band.beta, band.alpha);
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for b in opponent_profiles(m)? {
        checked += 1;
        let vc = band.value(&game.payoff(&ActionProfile::with_player(player, Action::C, &b)));
        if !(vc <= upper) {
            witnesses.push(CertWitness {
                action: Action::C,
                opponents: b.to_string(),
                value: to_f64(vc),
                bound: to_f64(upper),
            });
        }
        let vd = band.value(&game.payoff(&ActionProfile::with_player(player, Action::D, &b)));
        if !(vd >= lower) {
            witnesses.push(CertWitness {
                action: Action::D,
                opponents: b.to_string(),
                value: to_f64(vd),
                bound: to_f64(lower),
            });
        }
    }
    let commitment_failures = if band.mu == game.mu_coefficients(player) && strat.is_mu_based() {
        mu_rule_commitments(strat, upper, lower)
    } else {
        sampled_commitments(game, strat, band)?
    };
    Ok(Certificate {
        certified: witnesses.is_empty() && commitment_failures.is_empty(),
        a1: Action::C,
        a2: Action::D,
        alpha: to_f64(upper),
        beta: to_f64(lower),
        witnesses,
        profiles_checked: checked,
        commitment_failures,
    })
}

/// Commitments of the μ-based kinds, decided from their breakpoints
/// `{-δ, 0}`: `μ > upper ⇒ P(C) = 1` and `μ < lower ⇒ P(D) = 1`.
fn mu_rule_commitments<T: Scalar>(strat: &PayoffBasedStrategy<T>, upper: T, lower: T) -> Vec<String> {
    let zero = T::zero();
    let low_break = zero - strat.delta;
    let (coop_above, defect_below) = match &strat.kind {
        StrategyKind::ThresholdGood { band_p } => (
            upper >= zero || (*band_p == T::one() && upper >= low_break),
            lower <= low_break || (*band_p == zero && lower <= zero),
        ),
        StrategyKind::ContinuousGood => (upper >= zero, lower <= low_break),
        StrategyKind::Constant { p } => (*p == T::one(), *p == zero),
        StrategyKind::Custom(_) => unreachable!("custom rules are sampled"),
    };
    let mut failures = Vec::new();
    if !coop_above {
        failures.push(format!("P(C) < 1 somewhere above {:?}", upper));
    }
    if !defect_below {
        failures.push(format!("P(D) < 1 somewhere below {:?}", lower));
    }
    failures
}

/// Commitments of an arbitrary rule, probed on the vertices of `E` and on
/// seeded random points of `E`. A sample, not a proof.
fn sampled_commitments<T: Scalar, G: PdGame<T> + ?Sized>(
    game: &G,
    strat: &PayoffBasedStrategy<T>,
    band: &BandSet<T>,
) -> Result<Vec<String>> {
    let space = StateSpace::enumerate(game, crate::game::DEFAULT_ENUMERATION_CAP)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let mut probes: Vec<Vec<T>> = space.points().map(|p| p.to_vec()).collect();
    for _ in 0..2000 {
        let w: Vec<f64> = (0..space.vertices.len())
            .map(|_| rng.sample::<f64, _>(Exp1))
            .collect();
        let total: f64 = w.iter().sum();
        let mut x = vec![T::zero(); space.dim()];
        for (wk, p) in w.iter().zip(space.points()) {
            let c: T = lit(wk / total);
            for (xi, &pi) in x.iter_mut().zip(p) {
                *xi = *xi + c * pi;
            }
        }
        probes.push(x);
    }
    let mut failures = Vec::new();
    for x in probes {
        let m = band.value(&x);
        let q = strategy_distribution(strat, game, Some(&x));
        if m > band.beta && q.p_cooperate() != T::one() {
            failures.push(format!("P(C) < 1 at {x:?}"));
        }
        if m < band.alpha && q.p_defect() != T::one() {
            failures.push(format!("P(D) < 1 at {x:?}"));
        }
        if failures.len() >= 8 {
            break;
        }
    }
    Ok(failures)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeparationReport {
    pub x: Vec<f64>,
    /// Slab projection of `x`.
    pub y: Vec<f64>,
    /// `max_b <x - y, w_b - y>` over the vertices `w_b` of `C(x)`.
    pub max_inner: f64,
    pub argmax: String,
    /// Opponent profiles with a positive inner product.
    pub witnesses: Vec<(String, f64)>,
    pub passed: bool,
}

/// Evaluate the separating-hyperplane inequality at `x`. `C(x)` is the
/// convex hull of `w_b = Σ_a Q_x(a) U(a, b)`, so checking the vertices
/// suffices.
pub fn separation_check<T: Real, G: PdGame<T> + ?Sized>(
    game: &G,
    strat: &PayoffBasedStrategy<T>,
    band: &BandSet<T>,
    x: &[T],
    tol: T,
) -> Result<SeparationReport> {
    let player = strat.player;
    let y = slab_projection(band, x);
    let q = strategy_distribution(strat, game, Some(x));
    let normal: Vec<T> = x.iter().zip(&y).map(|(&a, &b)| a - b).collect();
    let mut max_inner = T::neg_infinity();
    let mut argmax = String::new();
    let mut witnesses = Vec::new();
    for b in opponent_profiles(game.player_count())? {
        let uc = game.payoff(&ActionProfile::with_player(player, Action::C, &b));
        let ud = game.payoff(&ActionProfile::with_player(player, Action::D, &b));
        let (pc, pd) = (q.p_cooperate(), q.p_defect());
        let inner = normal
            .iter()
            .zip(uc.iter().zip(ud.iter()).zip(&y))
            .fold(T::zero(), |acc, (&nv, ((&c, &d), &yi))| {
                acc + nv * (pc * c + pd * d - yi)
            });
        if inner > max_inner {
            max_inner = inner;
            argmax = b.to_string();
        }
        if inner > tol {
            witnesses.push((b.to_string(), to_f64(inner)));
        }
    }
    Ok(SeparationReport {
        x: x.iter().map(|&v| to_f64(v)).collect(),
        y: y.iter().map(|&v| to_f64(v)).collect(),
        max_inner: to_f64(max_inner),
        argmax,
        passed: witnesses.is_empty(),
        witnesses,
    })
}

/// `min(1, 2(|E| + |Λ|)^2 / (η^2 n))`.
pub fn blackwell_bound_i<T: Real>(e_norm: T, l_norm: T, eta: T, n: u64) -> Result<T> {
    if !(eta > T::zero()) || n < 1 {
        return Err(Error::InvalidParameter("need eta > 0 and n >= 1".into()));
    }
    let two = T::one() + T::one();
    let s = e_norm + l_norm;
    Ok((two * s * s / (eta * eta * lit::<T>(n as f64))).min(T::one()))
}

/// `min(1, 4 exp(-η^2 n / (32 |E|^2)))`.
pub fn blackwell_bound_ii<T: Real>(e_norm: T, eta: T, n: u64) -> Result<T> {
    if !(eta > T::zero()) || n < 1 {
        return Err(Error::InvalidParameter("need eta > 0 and n >= 1".into()));
    }
    let exponent = -(eta * eta * lit::<T>(n as f64)) / (lit::<T>(32.0) * e_norm * e_norm);
    Ok((lit::<T>(4.0) * exponent.exp()).min(T::one()))
}

/// Above this many distinct vertices the pairwise segment refinement of
/// [`lambda_norm`] is skipped.
pub const LAMBDA_PAIR_CAP: usize = 4096;

/// `|Λ| = sup { ||v|| : v ∈ Λ }` for `Λ = slab ∩ E`.
///
/// Candidates are the vertices of `E` inside the slab and the points where a
/// segment between two vertices crosses a slab boundary. Every vertex of the
/// polytope `Λ` is of one of these two kinds, so the maximum is exact while
/// the refinement runs; past [`LAMBDA_PAIR_CAP`] distinct vertices only the
/// first kind is used and the result is a lower bound. Returns `None` when no
/// candidate lies in `Λ`.
pub fn lambda_norm<T: Real>(space: &StateSpace<T>, band: &BandSet<T>) -> Option<T> {
    let mut pts: Vec<&[T]> = space.points().collect();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    pts.dedup();
    let mut best: Option<T> = None;
    let mut consider = |v: &[T]| {
        let n = norm_sq(v).sqrt();
        best = Some(best.map_or(n, |b: T| b.max(n)));
    };
    for p in &pts {
        if band.contains(p) {
            consider(p);
        }
    }
    if pts.len() <= LAMBDA_PAIR_CAP {
        let levels: Vec<T> = pts.iter().map(|p| band.value(p)).collect();
        for a in 0..pts.len() {
            for b in a + 1..pts.len() {
                for gamma in [band.alpha, band.beta] {
                    let (la, lb) = (levels[a] - gamma, levels[b] - gamma);
                    if la * lb < T::zero() {
                        let t = la / (la - lb);
                        let x: Vec<T> = pts[a]
                            .iter()
                            .zip(pts[b])
                            .map(|(&pa, &pb)| pa + t * (pb - pa))
                            .collect();
                        consider(&x);
                    }
                }
            }
        }
    }
    best
}

/// Random point of `E`: vertices mixed with normalised exponential
/// (uniform Dirichlet) weights.
pub fn sample_state_space<T: Real, R: Rng + ?Sized>(space: &StateSpace<T>, rng: &mut R) -> StateVector<T> {
    let w: Vec<f64> = (0..space.vertices.len())
        .map(|_| rng.sample::<f64, _>(Exp1))
        .collect();
    let total: f64 = w.iter().sum();
    let mut x = StateVector::zeros(space.dim());
    for (wk, p) in w.iter().zip(space.points()) {
        let c: T = lit(wk / total);
        for (xi, &pi) in x.iter_mut().zip(p) {
            *xi = *xi + c * pi;
        }
    }
    x
}

/// Fraction of traces with `sup_{m >= n} d(u_m, Λ) > η` over recorded rows,
/// where `d` is the slab distance, minus `2|E|/√m` when `corrected`.
pub fn tail_frequency<T: Real>(
    ensemble: &Ensemble<T>,
    band: &BandSet<T>,
    n: u64,
    eta: T,
    corrected: bool,
    e_norm: T,
) -> Result<f64> {
    let two = T::one() + T::one();
    let mut hits = 0usize;
    for trace in &ensemble.traces {
        let mut sup: Option<T> = None;
        for row in trace.rows().filter(|r| r.n >= n) {
            let mut d = slab_distance(band, row.u);
            if corrected {
                d = d - two * e_norm / lit::<T>(row.n as f64).sqrt();
            }
            sup = Some(sup.map_or(d, |s: T| s.max(d)));
        }
        match sup {
            None => return Err(Error::NoRowsPastN(n)),
            Some(s) if s > eta => hits += 1,
            Some(_) => {}
        }
    }
    Ok(hits as f64 / ensemble.traces.len() as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailEntry {
    pub n: u64,
    pub eta: f64,
    pub frequency: f64,
    pub corrected_frequency: f64,
    pub bound_i: f64,
    pub bound_ii: f64,
    /// Binomial standard error of `frequency` at the bound.
    pub std_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailTable {
    pub e_norm: f64,
    pub lambda_norm: f64,
    pub replications: usize,
    /// Always `"slab"`: distances are to the slab, a lower bound on `d(u, Λ)`.
    pub distance: &'static str,
    pub entries: Vec<TailEntry>,
}

/// Empirical tail frequencies next to both closed-form bounds for every
/// `(n, η)` pair.
pub fn tail_table<T: Real>(
    ensemble: &Ensemble<T>,
    space: &StateSpace<T>,
    band: &BandSet<T>,
    ns: &[u64],
    etas: &[T],
) -> Result<TailTable> {
    let e_norm = space.max_norm();
    let l_norm = lambda_norm(space, band).unwrap_or(T::zero());
    let reps = ensemble.traces.len();
    let mut entries = Vec::new();
    for &n in ns {
        for &eta in etas {
            let b1 = to_f64(blackwell_bound_i(e_norm, l_norm, eta, n)?);
            entries.push(TailEntry {
                n,
                eta: to_f64(eta),
                frequency: tail_frequency(ensemble, band, n, eta, false, e_norm)?,
                corrected_frequency: tail_frequency(ensemble, band, n, eta, true, e_norm)?,
                bound_i: b1,
                bound_ii: to_f64(blackwell_bound_ii(e_norm, eta, n)?),
                std_error: (b1 * (1.0 - b1) / reps as f64).sqrt(),
            });
        }
    }
    Ok(TailTable {
        e_norm: to_f64(e_norm),
        lambda_norm: to_f64(l_norm),
        replications: reps,
        distance: "slab",
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::NPlayerPayoffTable;
    use crate::graph::{GameGraph, NetworkGame, PayoffQuad};
    use num_rational::Rational64;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn free_riding3_exact() -> NPlayerPayoffTable<Rational64> {
        NPlayerPayoffTable::new(vec![r(-1, 2), r(1, 2), r(3, 2)], vec![r(0, 1), r(1, 1), r(2, 1)]).unwrap()
    }

    fn broken_exact() -> NPlayerPayoffTable<Rational64> {
        NPlayerPayoffTable::new(vec![r(-1, 2), r(5, 2), r(3, 2)], vec![r(0, 1), r(1, 1), r(2, 1)]).unwrap()
    }

    #[test]
    fn certify_free_riding() {
        let t = free_riding3_exact();
        let strat = PayoffBasedStrategy::threshold(0, r(1, 20), r(1, 1));
        let band = BandSet::for_player(&t, 0, r(1, 20));
        let cert = bcor_certify(&t, &strat, &band).unwrap();
        assert!(cert.certified, "{cert:?}");
        assert_eq!(cert.profiles_checked, 4);
        assert_eq!((cert.alpha, cert.beta), (0.0, -0.05));
    }

    #[test]
    fn certify_two_node_network() {
        let g = NetworkGame::uniform(
            GameGraph::path(2),
            PayoffQuad::new(r(0, 1), r(1, 1), r(3, 1), r(4, 1)),
            r(0, 1),
        )
        .unwrap();
        for i in 0..2 {
            let strat = PayoffBasedStrategy::continuous(i, r(1, 10));
            let cert = bcor_certify(&g, &strat, &BandSet::for_player(&g, i, r(1, 10))).unwrap();
            assert!(cert.certified);
            assert_eq!(cert.profiles_checked, 2);
        }
    }

    #[test]
    fn broken_dominance_is_rejected_with_witness() {
        let t = broken_exact();
        let strat = PayoffBasedStrategy::threshold(0, r(1, 20), r(1, 1));
        let cert = bcor_certify(&t, &strat, &BandSet::for_player(&t, 0, r(1, 20))).unwrap();
        assert!(!cert.certified);
        let w = cert
            .witnesses
            .iter()
            .find(|w| w.opponents == "CD")
            .expect("witness at b = (C, D)");
        assert_eq!(w.action, Action::C);
        assert_eq!(w.value, 0.25);
        // μ^1(U(C,C,D)) = 2.5 - (2.5 + 2) / 2
        let u = t.payoff(&[Action::C, Action::C, Action::D]);
        assert_eq!(t.mu(0, &u), r(1, 4));
    }

    #[test]
    fn commitment_checks() {
        let t = free_riding3_exact();
        let band = BandSet::for_player(&t, 0, r(1, 20));
        // strategy δ larger than the band's: continuous ramp still mixes below -δ_band
        let wide = PayoffBasedStrategy::continuous(0, r(1, 5));
        assert!(!bcor_certify(&t, &wide, &band).unwrap().certified);
        // threshold with band_p = 0 and a wider δ defects on the whole band: fine
        let wide_zero = PayoffBasedStrategy::threshold(0, r(1, 5), r(0, 1));
        assert!(bcor_certify(&t, &wide_zero, &band).unwrap().certified);
        let always_c = PayoffBasedStrategy::constant(0, r(1, 1));
        let cert = bcor_certify(&t, &always_c, &band).unwrap();
        assert_eq!(cert.commitment_failures.len(), 1);
        // custom rule equal to the threshold rule passes the sampled check
        let tf = NPlayerPayoffTable::new(vec![-0.5, 0.5, 1.5], vec![0.0, 1.0, 2.0]).unwrap();
        let custom = PayoffBasedStrategy::custom(0, 0.05, |_u: &[f64], mu| if mu >= -0.05 { 1.0 } else { 0.0 });
        let cert = bcor_certify(&tf, &custom, &BandSet::for_player(&tf, 0, 0.05)).unwrap();
        assert!(cert.certified, "{cert:?}");
        let bad_custom = PayoffBasedStrategy::custom(0, 0.05, |_u: &[f64], _| 0.5);
        assert!(!bcor_certify(&tf, &bad_custom, &BandSet::for_player(&tf, 0, 0.05)).unwrap().certified);
    }

    #[test]
    fn slab_distance_examples() {
        let two = NetworkGame::uniform(GameGraph::path(2), PayoffQuad::new(0.0, 1.0, 3.0, 4.0), 1e-12).unwrap();
        let band = BandSet::for_player(&two, 0, 0.1);
        let d = slab_distance(&band, &[0.0, 4.0]);
        assert!((d - 1.9 / 0.5f64.sqrt()).abs() < 1e-12);
        assert!((d - 2.6870).abs() < 1e-4);
        assert_eq!(slab_distance(&band, &[3.0, 3.0]), 0.0);

        let classic = NPlayerPayoffTable::two_player(0.0, 1.0, 3.0, 4.0);
        let band = BandSet::for_player(&classic, 0, 0.0);
        let d = slab_distance(&band, &[4.0, 0.0]);
        assert!((d - 4.0 / 2f64.sqrt()).abs() < 1e-12);
        let y = slab_projection(&band, &[4.0, 0.0]);
        assert!((y[0] - 2.0).abs() < 1e-12 && (y[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn separation_examples() {
        let t = NPlayerPayoffTable::new(vec![-0.5, 0.5, 1.5], vec![0.0, 1.0, 2.0]).unwrap();
        let strat = PayoffBasedStrategy::threshold(0, 0.05, 1.0);
        let band = BandSet::for_player(&t, 0, 0.05);
        // inside the band: x = y
        let rep = separation_check(&t, &strat, &band, &[1.0, 1.0, 1.0], 1e-12).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.max_inner, 0.0);

        let broken = NPlayerPayoffTable::new(vec![-0.5, 2.5, 1.5], vec![0.0, 1.0, 2.0]).unwrap();
        let band = BandSet::for_player(&broken, 0, 0.05);
        // μ^1(x) = 1.1 - (1 + 1) / 2 = 0.1
        let x = [1.1, 1.0, 1.0];
        let rep = separation_check(&broken, &strat, &band, &x, 1e-12).unwrap();
        assert!(!rep.passed);
        assert!(rep.witnesses.iter().any(|(b, v)| b == "CD" && *v > 0.0));
        // <x - y, w - y> = μ(x) μ(w) / ||μ||^2 with ||μ||^2 = 1.5
        let expected = 0.1 * 0.25 / 1.5;
        assert!((rep.max_inner - expected).abs() < 1e-12, "{}", rep.max_inner);
    }

    #[test]
    fn bound_examples() {
        assert!((blackwell_bound_i(4.0f64, 4.0, 0.5, 1000).unwrap() - 0.512).abs() < 1e-15);
        assert_eq!(blackwell_bound_i(4.0, 4.0, 0.5, 100).unwrap(), 1.0);
        let mut prev = 1.0;
        for n in [1000u64, 2000, 10_000, 1_000_000] {
            let b = blackwell_bound_i(4.0, 4.0, 0.5, n).unwrap();
            assert!(b < prev);
            prev = b;
        }
        assert!(blackwell_bound_ii(4.0, 0.5, 100_000).unwrap() < 1e-20);
        // η² n = 32 |E|² gives 4/e, clipped
        assert_eq!(blackwell_bound_ii(4.0, 0.5, 2048).unwrap(), 1.0);
        assert_eq!(blackwell_bound_ii(4.0, 0.01, 1).unwrap(), 1.0);
        assert!(blackwell_bound_ii(4.0, 0.5, 0).is_err());
        assert!(blackwell_bound_i(4.0, 4.0, 0.0, 10).is_err());
    }

    #[test]
    fn lambda_norm_classic() {
        let classic = NPlayerPayoffTable::two_player(0.0, 1.0, 3.0, 4.0);
        let space = StateSpace::enumerate(&classic, 16).unwrap();
        // (3,3) lies in the band, so it is the farthest point
        let band = BandSet::for_player(&classic, 0, 0.1);
        assert_eq!(lambda_norm(&space, &band).unwrap(), 18f64.sqrt());
        // a band that cuts (3,3) off: the boundary μ = -0.2 crosses the
        // edge (3,3)-(0,4) at (2.85, 3.05)
        let band = BandSet::new(classic.mu_coefficients(0), -0.5, -0.2).unwrap();
        let l = lambda_norm(&space, &band).unwrap();
        let expected = (2.85f64.powi(2) + 3.05f64.powi(2)).sqrt();
        assert!((l - expected).abs() < 1e-12, "{l} vs {expected}");
        // brute force over a fine grid of E
        let mut best = 0.0f64;
        let steps = 400;
        let pts: Vec<Vec<f64>> = space.points().map(|p| p.to_vec()).collect();
        for i in 0..=steps {
            for j in 0..=steps - i {
                for k in 0..=steps - i - j {
                    let w = [i, j, k, steps - i - j - k].map(|x| x as f64 / steps as f64);
                    let u: Vec<f64> = (0..2)
                        .map(|c| (0..4).map(|v| w[v] * pts[v][c]).sum())
                        .collect();
                    if band.contains(&u) {
                        best = best.max((u[0] * u[0] + u[1] * u[1]).sqrt());
                    }
                }
            }
        }
        assert!(best <= l + 1e-12 && l - best < 0.02, "{best} vs {l}");
    }

    #[test]
    fn dirichlet_samples_stay_in_the_hull() {
        let t = NPlayerPayoffTable::new(vec![-0.5, 0.5, 1.5], vec![0.0, 1.0, 2.0]).unwrap();
        let space = StateSpace::enumerate(&t, 16).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let x = sample_state_space(&space, &mut rng);
            // free-riding E lies in the box [-0.5, 2]^3 and sums within [0, 4.5]
            assert!(x.iter().all(|&v| (-0.5..=2.0).contains(&v)));
            let s: f64 = x.iter().sum();
            assert!((0.0..=4.5 + 1e-12).contains(&s));
        }
    }
}
