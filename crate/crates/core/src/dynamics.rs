//! Selections of the limit inclusion `du/dt ∈ -u + C(u)`, the nearest-point
//! retraction onto `E`, and projected Euler paths.

use rand::Rng;
use serde::Serialize;

use crate::approach::opponent_profiles;
use crate::engine::rng_from_seed;
use crate::error::{Error, Result};
use crate::game::{Action, ActionProfile, NPlayerPayoffTable, PdGame, StateSpace, StateVector};
use crate::scalar::{count, dot, lit, norm_sq, to_f64, Real, Scalar};
use crate::strategy::{strategy_distribution, ActionDist, PayoffBasedStrategy};

pub const RETRACT_TOL: f64 = 1e-10;
pub const RETRACT_BUDGET: usize = 100_000;
pub const DEFAULT_STEP: f64 = 1e-2;
pub const DEFAULT_HORIZON: f64 = 20.0;

/// How the opponents of the tracked player move at state `u`.
#[derive(Clone, Debug)]
pub enum Nature<T> {
    /// A fixed opponent profile, in player order.
    Pure(ActionProfile),
    /// Every opponent cooperates independently with this probability.
    Iid(T),
    /// Each opponent follows its own payoff-based strategy.
    Players(Vec<PayoffBasedStrategy<T>>),
}

#[derive(Clone, Debug)]
pub struct Selection<T> {
    pub strategy: PayoffBasedStrategy<T>,
    pub nature: Nature<T>,
}

impl<T: Scalar> Selection<T> {
    /// Opponent profiles with their probabilities under `ν_u`; zero-mass
    /// profiles are dropped.
    pub fn nature_at<G: PdGame<T> + ?Sized>(&self, game: &G, u: &[T]) -> Result<Vec<(ActionProfile, T)>> {
        let m = game.player_count();
        let me = self.strategy.player;
        match &self.nature {
            Nature::Pure(b) => {
                if b.len() != m - 1 {
                    return Err(Error::DimensionMismatch {
                        expected: m - 1,
                        found: b.len(),
                    });
                }
                Ok(vec![(b.clone(), T::one())])
            }
            Nature::Iid(p) => {
                let d = ActionDist::new(*p);
                product_measure(m - 1, |_| d)
            }
            Nature::Players(strats) => {
                let mut slots: Vec<Option<ActionDist<T>>> = vec![None; m - 1];
                for s in strats {
                    if s.player == me || s.player >= m {
                        return Err(Error::PlayerOutOfRange {
                            index: s.player,
                            players: m,
                        });
                    }
                    let slot = if s.player < me { s.player } else { s.player - 1 };
                    slots[slot] = Some(strategy_distribution(s, game, Some(u)));
                }
                if let Some(missing) = slots.iter().position(Option::is_none) {
                    let player = if missing < me { missing } else { missing + 1 };
                    return Err(Error::InvalidParameter(format!(
                        "no strategy for opponent {}",
                        player + 1
                    )));
                }
                product_measure(m - 1, |k| slots[k].unwrap())
            }
        }
    }
}

fn product_measure<T: Scalar>(
    n: usize,
    dist: impl Fn(usize) -> ActionDist<T>,
) -> Result<Vec<(ActionProfile, T)>> {
    let dists: Vec<ActionDist<T>> = (0..n).map(dist).collect();
    let mut out = Vec::new();
    for b in opponent_profiles(n + 1)? {
        let w = b
            .iter()
            .zip(&dists)
            .fold(T::one(), |acc, (&a, d)| acc * d.prob(a));
        if w != T::zero() {
            out.push((b, w));
        }
    }
    Ok(out)
}

/// The point `Σ_b ν_u(b) Σ_a Q_u(a) U(a, b)` of `C(u)` picked by the selection.
pub fn selection_point<T: Scalar, G: PdGame<T> + ?Sized>(
    sel: &Selection<T>,
    game: &G,
    u: &[T],
) -> Result<StateVector<T>> {
    let q = strategy_distribution(&sel.strategy, game, Some(u));
    let me = sel.strategy.player;
    let mut out = StateVector::zeros(game.payoff_dim());
    let mut buf = vec![T::zero(); game.payoff_dim()];
    for (b, w) in sel.nature_at(game, u)? {
        for a in [Action::C, Action::D] {
            let p = q.prob(a);
            if p == T::zero() {
                continue;
            }
            game.payoff_into(&ActionProfile::with_player(me, a, &b), &mut buf);
            for (o, &x) in out.iter_mut().zip(&buf) {
                *o = *o + w * p * x;
            }
        }
    }
    Ok(out)
}

/// `f(u) = -u + selection_point(u)`.
pub fn selection_field<T: Scalar, G: PdGame<T> + ?Sized>(
    sel: &Selection<T>,
    game: &G,
    u: &[T],
) -> Result<StateVector<T>> {
    let mut v = selection_point(sel, game, u)?;
    for (vi, &ui) in v.iter_mut().zip(u) {
        *vi = *vi - ui;
    }
    Ok(v)
}

pub trait VectorField<T> {
    fn eval(&self, u: &[T]) -> Result<Vec<T>>;
}

/// `f(u) = -u + c`.
#[derive(Clone, Debug)]
pub struct AffineField<T> {
    pub target: Vec<T>,
}

impl<T: Scalar> VectorField<T> for AffineField<T> {
    fn eval(&self, u: &[T]) -> Result<Vec<T>> {
        if u.len() != self.target.len() {
            return Err(Error::DimensionMismatch {
                expected: self.target.len(),
                found: u.len(),
            });
        }
        Ok(self.target.iter().zip(u).map(|(&c, &x)| c - x).collect())
    }
}

pub struct SelectionField<'g, T, G: ?Sized> {
    pub game: &'g G,
    pub selection: Selection<T>,
}

impl<T: Scalar, G: PdGame<T> + ?Sized> VectorField<T> for SelectionField<'_, T, G> {
    fn eval(&self, u: &[T]) -> Result<Vec<T>> {
        Ok(selection_field(&self.selection, self.game, u)?.into_inner())
    }
}

/// Nearest point of `conv(vertices)` to `x`, by Wolfe's minimum-norm-point
/// method on the translated vertices `v - x`.
///
/// Stops once the support-function gap `<w, w> - min_v <w, v - x>` is at
/// most `tol²`, which puts `w` within `tol` of the true minimiser. Points
/// within `tol` of the hull are returned unchanged.
pub fn retract_to_e<T: Real>(x: &[T], vertices: &[&[T]], tol: T) -> Result<StateVector<T>> {
    if vertices.is_empty() {
        return Err(Error::InvalidParameter("empty vertex set".into()));
    }
    if let Some(bad) = vertices.iter().find(|p| p.len() != x.len()) {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: bad.len(),
        });
    }
    let mut pts: Vec<Vec<T>> = vertices
        .iter()
        .map(|v| v.iter().zip(x).map(|(&a, &b)| a - b).collect())
        .collect();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    pts.dedup();

    let scale = pts.iter().map(|p| norm_sq(p)).fold(T::zero(), T::max);
    let floor = lit::<T>(64.0) * T::epsilon() * scale.max(T::one());
    let stop = (tol * tol).max(floor);

    let first = (0..pts.len())
        .min_by(|&a, &b| norm_sq(&pts[a]).partial_cmp(&norm_sq(&pts[b])).unwrap())
        .unwrap();
    let mut set = vec![first];
    let mut lambda = vec![T::one()];
    let mut w = pts[first].clone();
    let mut iterations = 0;
    loop {
        iterations += 1;
        if iterations > RETRACT_BUDGET {
            return Err(Error::NotConverged {
                iterations: RETRACT_BUDGET,
                residual: to_f64(norm_sq(&w).sqrt()),
            });
        }
        let ww = norm_sq(&w);
        let (j, wj) = pts
            .iter()
            .enumerate()
            .map(|(k, p)| (k, dot(&w, p)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if ww - wj <= stop || set.contains(&j) {
            break;
        }
        set.push(j);
        lambda.push(T::zero());
        loop {
            let alpha = match affine_minimiser(&pts, &set) {
                Some(a) => a,
                None => {
                    // numerically dependent set: drop the newest point
                    set.pop();
                    lambda.pop();
                    break;
                }
            };
            if alpha.iter().all(|&a| a > T::zero()) {
                lambda = alpha;
                break;
            }
            let mut theta = T::one();
            for (&l, &a) in lambda.iter().zip(&alpha) {
                if a <= T::zero() {
                    theta = theta.min(l / (l - a));
                }
            }
            for (l, &a) in lambda.iter_mut().zip(&alpha) {
                *l = theta * a + (T::one() - theta) * *l;
            }
            let mut k = 0;
            while k < set.len() {
                if lambda[k] <= T::epsilon() {
                    set.remove(k);
                    lambda.remove(k);
                } else {
                    k += 1;
                }
            }
            let total = lambda.iter().fold(T::zero(), |a, &b| a + b);
            for l in lambda.iter_mut() {
                *l = *l / total;
            }
        }
        let next = combine(&pts, &set, &lambda, x.len());
        if norm_sq(&next) >= ww && iterations > 1 {
            w = next;
            break;
        }
        w = next;
    }
    if norm_sq(&w).sqrt() <= tol {
        return Ok(StateVector(x.to_vec()));
    }
    Ok(StateVector(x.iter().zip(&w).map(|(&a, &b)| a + b).collect()))
}

fn combine<T: Real>(pts: &[Vec<T>], set: &[usize], lambda: &[T], dim: usize) -> Vec<T> {
    let mut w = vec![T::zero(); dim];
    for (&k, &l) in set.iter().zip(lambda) {
        for (wi, &p) in w.iter_mut().zip(&pts[k]) {
            *wi = *wi + l * p;
        }
    }
    w
}

/// Minimiser of `||Σ α_k p_k||` over `Σ α_k = 1`, from the bordered normal
/// equations.
fn affine_minimiser<T: Real>(pts: &[Vec<T>], set: &[usize]) -> Option<Vec<T>> {
    let n = set.len();
    let mut a = vec![vec![T::zero(); n + 2]; n + 1];
    for r in 0..n {
        for c in 0..n {
            a[r][c] = dot(&pts[set[r]], &pts[set[c]]);
        }
        a[r][n] = T::one();
        a[n][r] = T::one();
    }
    a[n][n + 1] = T::one();
    let x = solve(a)?;
    Some(x[..n].to_vec())
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
fn solve<T: Real>(mut a: Vec<Vec<T>>) -> Option<Vec<T>> {
    let n = a.len();
    let scale = a
        .iter()
        .flat_map(|r| r[..n].iter())
        .fold(T::zero(), |m, &v| m.max(v.abs()));
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if a[piv][col].abs() <= lit::<T>(1e3) * T::epsilon() * scale {
            return None;
        }
        a.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..=n {
                let v = a[col][c];
                a[r][c] = a[r][c] - f * v;
            }
        }
    }
    let mut x = vec![T::zero(); n];
    for r in (0..n).rev() {
        let s = (r + 1..n).fold(a[r][n], |s, c| s - a[r][c] * x[c]);
        x[r] = s / a[r][r];
    }
    Some(x)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlowPath<T> {
    pub times: Vec<T>,
    pub states: Vec<Vec<T>>,
}

impl<T: Copy> FlowPath<T> {
    pub fn last(&self) -> Option<&[T]> {
        self.states.last().map(Vec::as_slice)
    }
}

/// Projected Euler path `η_{k+1} = r(η_k + h f(η_k))` on `t_k = k h`,
/// `k = 0..=round(T/h)`. Without a state space the step is not projected.
pub fn euler_integrate<T: Real, F: VectorField<T> + ?Sized>(
    field: &F,
    u0: &[T],
    h: T,
    t_end: T,
    space: Option<&StateSpace<T>>,
) -> Result<FlowPath<T>> {
    if !(h > T::zero()) || h >= T::one() {
        return Err(Error::InvalidParameter(format!(
            "step h = {} must lie in (0, 1)",
            to_f64(h)
        )));
    }
    if !(t_end >= h) {
        return Err(Error::InvalidParameter("horizon T must be at least h".into()));
    }
    let steps = (t_end / h).round().to_usize().unwrap_or(0);
    let verts: Option<Vec<&[T]>> = space.map(|s| s.points().collect());
    let tol = lit::<T>(RETRACT_TOL);
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut eta = u0.to_vec();
    times.push(T::zero());
    states.push(eta.clone());
    for k in 1..=steps {
        let f = field.eval(&eta)?;
        let x: Vec<T> = eta.iter().zip(&f).map(|(&e, &d)| e + h * d).collect();
        eta = match &verts {
            Some(v) => retract_to_e(&x, v, tol)?.into_inner(),
            None => x,
        };
        times.push(count::<T>(k) * h);
        states.push(eta.clone());
    }
    Ok(FlowPath { times, states })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagonalWitness {
    pub opponents: String,
    pub mu: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagonalReport {
    pub samples: usize,
    /// `v*` is the only point of `C^1(u)` on `{μ^1 = 0}` at every sample.
    pub unique: bool,
    /// Samples where the strategy does not cooperate with certainty.
    pub not_committed: usize,
    /// Opponent profiles other than all-C with `μ^1(U(C, b)) = 0`.
    pub ties: Vec<DiagonalWitness>,
    /// Opponent profiles with `μ^1(U(C, b)) > 0`.
    pub sign_violations: Vec<DiagonalWitness>,
}

/// Diagonal points `(c, ..., c)` of `E` other than `v*`: `c` runs over the
/// range of symmetrised vertex values, endpoints included.
pub fn diagonal_samples<T: Scalar>(table: &NPlayerPayoffTable<T>, samples: usize, seed: u64) -> Vec<Vec<T>> {
    let n = table.player_count();
    // mean coordinate of the profiles with k cooperators
    let levels: Vec<T> = (0..=n)
        .map(|k| {
            let coop = if k > 0 { count::<T>(k) * table.v_c()[k - 1] } else { T::zero() };
            let def = if k < n { count::<T>(n - k) * table.v_d()[k] } else { T::zero() };
            (coop + def) / count(n)
        })
        .collect();
    let lo = levels.iter().copied().fold(levels[0], crate::scalar::min);
    let hi = levels.iter().copied().fold(levels[0], crate::scalar::max);
    let vstar = table.v_c()[n - 1];
    let mut rng = rng_from_seed(seed);
    let mut out = vec![vec![lo; n], vec![hi; n]];
    // dyadic fractions keep rational coordinates small
    let grid = 1usize << 20;
    while out.len() < samples.max(2) {
        let t = count::<T>(rng.random_range(0..=grid)) / count::<T>(grid);
        out.push(vec![lo + t * (hi - lo); n]);
    }
    out.retain(|u| u[0] != vstar);
    out
}

/// On the diagonal every `μ^i` vanishes, so a good strategy cooperates and
/// `C^1(u)` is the hull of `U(C, b)`. Checks that `μ^1(U(C, b)) <= 0` with
/// equality only at the all-C opponent profile.
pub fn diagonal_limit_check<T: Scalar>(
    table: &NPlayerPayoffTable<T>,
    strat: &PayoffBasedStrategy<T>,
    samples: usize,
    seed: u64,
) -> Result<DiagonalReport> {
    let n = table.player_count();
    let me = strat.player;
    if me >= n {
        return Err(Error::PlayerOutOfRange { index: me, players: n });
    }
    let points = diagonal_samples(table, samples, seed);
    let not_committed = points
        .iter()
        .filter(|u| strategy_distribution(strat, table, Some(u)).p_cooperate() != T::one())
        .count();
    let mut ties = Vec::new();
    let mut sign_violations = Vec::new();
    for b in opponent_profiles(n)? {
        let v = table.payoff(&ActionProfile::with_player(me, Action::C, &b));
        let mu = table.mu(me, &v);
        let w = DiagonalWitness {
            opponents: b.to_string(),
            mu: to_f64(mu),
        };
        if mu > T::zero() {
            sign_violations.push(w);
        } else if mu == T::zero() && b.cooperators() != n - 1 {
            ties.push(w);
        }
    }
    Ok(DiagonalReport {
        samples: points.len(),
        unique: not_committed == 0 && ties.is_empty() && sign_violations.is_empty(),
        not_committed,
        ties,
        sign_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::free_riding_game;
    use num_rational::Rational64;

    fn classic() -> NPlayerPayoffTable<f64> {
        NPlayerPayoffTable::two_player(0.0, 1.0, 3.0, 4.0)
    }

    fn free_riding3() -> NPlayerPayoffTable<f64> {
        free_riding_game(&[0.0, 1.0, 2.0, 3.0], 1.5, 3).unwrap()
    }

    #[test]
    fn fixed_point_at_mutual_cooperation() {
        let t = free_riding3();
        let sel = Selection {
            strategy: PayoffBasedStrategy::continuous(0, 0.1),
            nature: Nature::Pure(ActionProfile::uniform(2, Action::C)),
        };
        let v = t.mutual_cooperation();
        assert!(selection_field(&sel, &t, &v).unwrap().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn committed_defection_field() {
        let t = free_riding3();
        let sel = Selection {
            strategy: PayoffBasedStrategy::continuous(0, 0.1),
            nature: Nature::Iid(0.0),
        };
        // μ^1 = 0 - (2 + 2) / 2 < -δ
        let u = [0.0, 2.0, 2.0];
        let f = selection_field(&sel, &t, &u).unwrap();
        let dd = t.payoff(&ActionProfile::uniform(3, Action::D));
        for k in 0..3 {
            assert_eq!(f[k], dd[k] - u[k]);
        }
    }

    #[test]
    fn diagonal_selection_hits_only_vstar() {
        let t = free_riding3();
        let strat = PayoffBasedStrategy::continuous(0, 0.1);
        let u = [1.0, 1.0, 1.0];
        assert_eq!(t.mu(0, &u), 0.0);
        for b in ActionProfile::all(2) {
            let sel = Selection {
                strategy: strat.clone(),
                nature: Nature::Pure(b.clone()),
            };
            let v = selection_point(&sel, &t, &u).unwrap();
            let m = t.mu(0, &v);
            if b.cooperators() == 2 {
                assert_eq!(m, 0.0);
                assert_eq!(v, t.mutual_cooperation());
            } else {
                assert!(m < 0.0);
            }
        }
    }

    #[test]
    fn players_nature_is_a_product() {
        let t = free_riding3();
        let sel = Selection {
            strategy: PayoffBasedStrategy::continuous(0, 0.2),
            nature: Nature::Players(vec![
                PayoffBasedStrategy::constant(1, 0.5),
                PayoffBasedStrategy::constant(2, 0.25),
            ]),
        };
        let nu = sel.nature_at(&t, &[1.0, 1.0, 1.0]).unwrap();
        let total: f64 = nu.iter().map(|(_, w)| w).sum();
        assert!((total - 1.0).abs() < 1e-15);
        let cc = nu.iter().find(|(b, _)| b.to_string() == "CC").unwrap().1;
        assert_eq!(cc, 0.125);
        let missing = Selection {
            strategy: PayoffBasedStrategy::continuous(0, 0.2),
            nature: Nature::Players(vec![PayoffBasedStrategy::constant(1, 0.5)]),
        };
        assert!(missing.nature_at(&t, &[1.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn retraction_examples() {
        let t = classic();
        let space = StateSpace::enumerate(&t, 16).unwrap();
        let v: Vec<&[f64]> = space.points().collect();
        let r = retract_to_e(&[5.0, 0.0], &v, 1e-10).unwrap();
        assert!((r[0] - 4.0).abs() < 1e-9 && r[1].abs() < 1e-9, "{r:?}");
        assert_eq!(retract_to_e(&[3.0, 3.0], &v, 1e-10).unwrap().0, vec![3.0, 3.0]);
        assert_eq!(retract_to_e(&[2.0, 2.0], &v, 1e-10).unwrap().0, vec![2.0, 2.0]);
        // outside across the edge (0,4)-(3,3): foot of the perpendicular
        let r = retract_to_e(&[2.0, 5.0], &v, 1e-10).unwrap();
        // edge direction (3,-1)/√10, from (0,4): t = (6 - 1)/10 → (1.5, 3.5)
        assert!((r[0] - 1.5).abs() < 1e-9 && (r[1] - 3.5).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn retraction_in_higher_dimension() {
        let t = free_riding_game(&[0.0, 1.0, 2.0, 3.0, 4.0, 5.0], 1.5, 5).unwrap();
        let space = StateSpace::enumerate(&t, 16).unwrap();
        let v: Vec<&[f64]> = space.points().collect();
        let far = [10.0, -3.0, 7.0, 0.5, 2.0];
        let r = retract_to_e(&far, &v, 1e-10).unwrap();
        // optimality: <x - r, v - r> <= 0 for every vertex
        let d: Vec<f64> = far.iter().zip(r.iter()).map(|(a, b)| a - b).collect();
        for p in &v {
            let inner: f64 = d.iter().zip(p.iter().zip(r.iter())).map(|(a, (b, c))| a * (b - c)).sum();
            assert!(inner <= 1e-8, "{inner}");
        }
        // r itself is in E
        let back = retract_to_e(&r, &v, 1e-9).unwrap();
        assert_eq!(back.0, r.0);
    }

    #[test]
    fn euler_affine_contraction() {
        let t = classic();
        let vstar = t.mutual_cooperation().into_inner();
        let field = AffineField { target: vstar.clone() };
        let u0 = [0.0, 4.0];
        let space = StateSpace::enumerate(&t, 16).unwrap();
        let path = euler_integrate(&field, &u0, 0.01, 10.0, Some(&space)).unwrap();
        assert_eq!(path.states.len(), 1001);
        let d0 = (norm_sq(&[u0[0] - vstar[0], u0[1] - vstar[1]])).sqrt();
        for (k, s) in path.states.iter().enumerate() {
            let expect = 0.99f64.powi(k as i32);
            for c in 0..2 {
                let want = vstar[c] + expect * (u0[c] - vstar[c]);
                assert!((s[c] - want).abs() < 1e-12);
            }
            let exact: Vec<f64> = (0..2)
                .map(|c| vstar[c] + (-path.times[k]).exp() * (u0[c] - vstar[c]))
                .collect();
            let gap = ((s[0] - exact[0]).powi(2) + (s[1] - exact[1]).powi(2)).sqrt();
            assert!(gap <= 5.0 * 0.01 * d0);
        }
        let end = path.last().unwrap();
        let dist = ((end[0] - 3.0).powi(2) + (end[1] - 3.0).powi(2)).sqrt();
        assert!(dist <= d0 * 0.99f64.powi(1000) + 1e-12);

        let still = euler_integrate(&field, &vstar, 0.01, 1.0, Some(&space)).unwrap();
        assert!(still.states.iter().all(|s| s == &vstar));
    }

    #[test]
    fn euler_rejects_bad_steps() {
        let field = AffineField { target: vec![0.0] };
        assert!(euler_integrate(&field, &[1.0], 1.0, 10.0, None).is_err());
        assert!(euler_integrate(&field, &[1.0], 0.0, 10.0, None).is_err());
        assert!(euler_integrate(&field, &[1.0], 0.5, 0.1, None).is_err());
    }

    #[test]
    fn diagonal_check_free_riding() {
        let r = |n, d| Rational64::new(n, d);
        let t = free_riding_game(&[r(0, 1), r(1, 1), r(2, 1), r(3, 1)], r(3, 2), 3).unwrap();
        let strat = PayoffBasedStrategy::continuous(0, r(1, 10));
        let rep = diagonal_limit_check(&t, &strat, 50, 7).unwrap();
        assert!(rep.unique, "{rep:?}");
        assert!(rep.samples >= 2);
    }

    #[test]
    fn diagonal_check_flags_ties() {
        // vC[0] = vD[1]: (ii) fails, and μ^1(U(C, D, D)) = 0
        let t = NPlayerPayoffTable::new(vec![1.0, 1.5, 2.0], vec![0.5, 1.0, 2.5]).unwrap();
        let strat = PayoffBasedStrategy::continuous(0, 0.1);
        let rep = diagonal_limit_check(&t, &strat, 10, 1).unwrap();
        assert!(!rep.unique);
        assert_eq!(rep.ties.len(), 1);
        assert_eq!(rep.ties[0].opponents, "DD");
    }
}
