//! Network Prisoner's Dilemma games.
//!
//! Players sit on the vertices of a symmetric, loop-free, connected graph and
//! play a two-player PD against each neighbour. Payoff space is indexed by
//! directed edges `(i, j)` in lexicographic order, so the coordinates of
//! player `i` (its payoffs against each neighbour) are contiguous.

use std::collections::{BTreeSet, VecDeque};
use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{Action, PdGame, StateVector, ValidationReport, Witness};
use crate::scalar::{abs, count, to_f64, Real, Scalar};

/// Iteration budget of [`stationary_distribution`].
pub const STATIONARY_MAX_ITERATIONS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GameGraph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl GameGraph {
    /// Edges are 0-based ordered pairs. No validation happens here, see
    /// [`validate_graph`].
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        GameGraph {
            vertex_count,
            edges: edges.into_iter().collect(),
        }
    }

    /// Build from undirected pairs, inserting both directions.
    pub fn undirected(vertex_count: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges = BTreeSet::new();
        for (i, j) in pairs {
            edges.insert((i, j));
            edges.insert((j, i));
        }
        GameGraph {
            vertex_count,
            edges,
        }
    }

    pub fn path(m: usize) -> Self {
        Self::undirected(m, (0..m.saturating_sub(1)).map(|i| (i, i + 1)))
    }

    pub fn cycle(m: usize) -> Self {
        Self::undirected(m, (0..m).map(|i| (i, (i + 1) % m)))
    }

    /// Vertex 0 is the hub.
    pub fn star(m: usize) -> Self {
        Self::undirected(m, (1..m).map(|i| (0, i)))
    }

    pub fn complete(m: usize) -> Self {
        Self::undirected(m, (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.range((i, 0)..(i + 1, 0)).map(|&(_, j)| j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }
}

/// Symmetry, absence of self-loops and irreducibility.
pub fn validate_graph(g: &GameGraph) -> ValidationReport {
    let m = g.vertex_count;
    let mut report = ValidationReport::new();
    if m < 2 {
        report.violate("vertex_count", Witness::Vertex(m), m as f64, 2.0);
        return report;
    }
    for (i, j) in g.edges() {
        if i >= m || j >= m {
            report.violate("in_range", Witness::Pair(i, j), i.max(j) as f64, m as f64);
            continue;
        }
        if i == j {
            report.violate("self_loop_free", Witness::Vertex(i), 1.0, 0.0);
        } else if !g.has_edge(j, i) {
            report.violate("symmetric", Witness::Pair(j, i), 0.0, 1.0);
        }
    }
    // search from vertex 0 over the symmetrised relation
    let mut adj = vec![Vec::new(); m];
    for (i, j) in g.edges().filter(|&(i, j)| i < m && j < m) {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut seen = vec![false; m];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    for (v, _) in seen.iter().enumerate().filter(|(_, s)| !**s) {
        report.violate("irreducible", Witness::Vertex(v), 0.0, 1.0);
    }
    report
}

/// Row-stochastic matrix adapted to a graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransitionMatrix<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> TransitionMatrix<T> {
    /// Check shape, sign, row sums (within `tol`) and adaptedness
    /// (`K_ij > 0` exactly on edges).
    pub fn new(graph: &GameGraph, rows: Vec<Vec<T>>, tol: T) -> Result<Self> {
        let m = graph.vertex_count();
        if rows.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: rows.len(),
            });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: row.len(),
                });
            }
            let mut sum = T::zero();
            for (j, &k) in row.iter().enumerate() {
                if k < T::zero() {
                    return Err(Error::InvalidTransitionMatrix(format!(
                        "K[{i}][{j}] = {k:?} is negative"
                    )));
                }
                if (k > T::zero()) != graph.has_edge(i, j) {
                    return Err(Error::InvalidTransitionMatrix(format!(
                        "K[{i}][{j}] = {k:?} is not adapted to the edge set"
                    )));
                }
                sum = sum + k;
            }
            if abs(sum - T::one()) > tol {
                return Err(Error::InvalidTransitionMatrix(format!(
                    "row {i} sums to {sum:?}"
                )));
            }
        }
        Ok(TransitionMatrix { rows })
    }

    /// `K_ij = 1 / N_i` on the neighbours of `i`.
    pub fn uniform(graph: &GameGraph) -> Self {
        let m = graph.vertex_count();
        let rows = (0..m)
            .map(|i| {
                let deg = graph.degree(i);
                (0..m)
                    .map(|j| {
                        if graph.has_edge(i, j) {
                            T::one() / count::<T>(deg)
                        } else {
                            T::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        TransitionMatrix { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    /// `π K`.
    pub fn left_mul(&self, pi: &[T]) -> Vec<T> {
        let m = self.size();
        let mut out = vec![T::zero(); m];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &k) in row.iter().enumerate() {
                out[j] = out[j] + pi[i] * k;
            }
        }
        out
    }
}

/// Invariant probability of `K` by power iteration on the lazy chain
/// `(K + I) / 2`, which has the same invariant law and is aperiodic.
/// Stops once `||πK - π||_∞ <= tol`.
pub fn stationary_distribution<T: Real>(k: &TransitionMatrix<T>, tol: T) -> Result<Vec<T>> {
    let m = k.size();
    if m == 0 {
        return Err(Error::InvalidTransitionMatrix("empty matrix".into()));
    }
    let half = T::one() / (T::one() + T::one());
    let mut pi = vec![T::one() / count::<T>(m); m];
    let mut residual = T::infinity();
    for _ in 0..STATIONARY_MAX_ITERATIONS {
        let next = k.left_mul(&pi);
        residual = next
            .iter()
            .zip(&pi)
            .fold(T::zero(), |acc, (&a, &b)| acc.max((a - b).abs()));
        if residual <= tol {
            break;
        }
        let mut total = T::zero();
        for (p, n) in pi.iter_mut().zip(&next) {
            *p = half * (*p + *n);
            total = total + *p;
        }
        for p in pi.iter_mut() {
            *p = *p / total;
        }
    }
    if !(residual <= tol) {
        return Err(Error::NotConverged {
            iterations: STATIONARY_MAX_ITERATIONS,
            residual: to_f64(residual),
        });
    }
    if let Some(i) = pi.iter().position(|&p| !(p > T::zero())) {
        return Err(Error::InvalidTransitionMatrix(format!(
            "stationary mass at vertex {i} is not positive"
        )));
    }
    Ok(pi)
}

/// `π_i = N_i / N`, the invariant law of [`TransitionMatrix::uniform`],
/// computed exactly.
pub fn degree_distribution<T: Scalar>(graph: &GameGraph) -> Vec<T> {
    let total = count::<T>(graph.edges.len());
    (0..graph.vertex_count())
        .map(|i| count::<T>(graph.degree(i)) / total)
        .collect()
}

/// Stationary law and directed-edge weights `ω_ij = π_i K_ij`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeWeights<T> {
    pub pi: Vec<T>,
    /// `(i, j, ω_ij)` in lexicographic edge order.
    pub omega: Vec<(usize, usize, T)>,
}

impl<T: Scalar> EdgeWeights<T> {
    pub fn get(&self, i: usize, j: usize) -> Option<T> {
        self.omega
            .binary_search_by(|&(a, b, _)| (a, b).cmp(&(i, j)))
            .ok()
            .map(|idx| self.omega[idx].2)
    }

    pub fn is_reversible(&self, tol: T) -> bool {
        self.omega
            .iter()
            .all(|&(i, j, w)| self.get(j, i).is_some_and(|r| abs(w - r) <= tol))
    }
}

/// Compute `ω_ij = π_i K_ij` and check `Σ_j ω_ij = Σ_j ω_ji = π_i` within `tol`.
pub fn edge_weights<T: Scalar>(
    graph: &GameGraph,
    k: &TransitionMatrix<T>,
    pi: &[T],
    tol: T,
) -> Result<EdgeWeights<T>> {
    let m = graph.vertex_count();
    if pi.len() != m || k.size() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: pi.len(),
        });
    }
    let omega: Vec<(usize, usize, T)> = graph
        .edges()
        .map(|(i, j)| (i, j, pi[i] * k.get(i, j)))
        .collect();
    let mut out_w = vec![T::zero(); m];
    let mut in_w = vec![T::zero(); m];
    for &(i, j, w) in &omega {
        out_w[i] = out_w[i] + w;
        in_w[j] = in_w[j] + w;
    }
    for v in 0..m {
        if abs(out_w[v] - pi[v]) > tol || abs(in_w[v] - pi[v]) > tol {
            return Err(Error::WeightIdentity {
                vertex: v,
                out_weight: to_f64(out_w[v]),
                in_weight: to_f64(in_w[v]),
                pi: to_f64(pi[v]),
            });
        }
    }
    Ok(EdgeWeights {
        pi: pi.to_vec(),
        omega,
    })
}

/// The two-player PD played on every edge.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PayoffQuad<T> {
    pub cd: T,
    pub dd: T,
    pub cc: T,
    pub dc: T,
}

impl<T: Scalar> PayoffQuad<T> {
    pub fn new(cd: T, dd: T, cc: T, dc: T) -> Self {
        PayoffQuad { cd, dd, cc, dc }
    }

    /// Payoff to a player choosing `own` against `other`.
    pub fn lookup(&self, own: Action, other: Action) -> T {
        match (own, other) {
            (Action::C, Action::C) => self.cc,
            (Action::C, Action::D) => self.cd,
            (Action::D, Action::C) => self.dc,
            (Action::D, Action::D) => self.dd,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NetworkGame<T> {
    graph: GameGraph,
    k: TransitionMatrix<T>,
    weights: EdgeWeights<T>,
    payoffs: PayoffQuad<T>,
    /// Directed edges in coordinate order.
    edges: Vec<(usize, usize)>,
    /// Coordinates of player `i` are `offsets[i]..offsets[i + 1]`.
    offsets: Vec<usize>,
    /// Coordinate of `(j, i)` for each coordinate `(i, j)`.
    reverse: Vec<usize>,
}

impl<T: Scalar> NetworkGame<T> {
    /// Assemble a game from a transition matrix and its invariant law. Fails
    /// if the graph is structurally invalid or `π` is inconsistent with `K`.
    /// Payoff conditions are checked by [`validate_network`].
    pub fn new(
        graph: GameGraph,
        k: TransitionMatrix<T>,
        pi: &[T],
        payoffs: PayoffQuad<T>,
        tol: T,
    ) -> Result<Self> {
        let report = validate_graph(&graph);
        if !report.passed {
            let v = &report.violations[0];
            return Err(Error::InvalidGraph(format!("{} at {:?}", v.condition, v.witness)));
        }
        let weights = edge_weights(&graph, &k, pi, tol)?;
        let edges: Vec<(usize, usize)> = graph.edges().collect();
        let m = graph.vertex_count();
        let mut offsets = vec![0; m + 1];
        for &(i, _) in &edges {
            offsets[i + 1] += 1;
        }
        for i in 0..m {
            offsets[i + 1] += offsets[i];
        }
        let reverse = edges
            .iter()
            .map(|&(i, j)| edges.binary_search(&(j, i)).expect("symmetric graph"))
            .collect();
        Ok(NetworkGame {
            graph,
            k,
            weights,
            payoffs,
            edges,
            offsets,
            reverse,
        })
    }

    /// `K_ij = 1/N_i` with `π_i = N_i / N`.
    pub fn uniform(graph: GameGraph, payoffs: PayoffQuad<T>, tol: T) -> Result<Self> {
        let k = TransitionMatrix::uniform(&graph);
        let pi = degree_distribution(&graph);
        Self::new(graph, k, &pi, payoffs, tol)
    }

    pub fn graph(&self) -> &GameGraph {
        &self.graph
    }

    pub fn transition(&self) -> &TransitionMatrix<T> {
        &self.k
    }

    pub fn weights(&self) -> &EdgeWeights<T> {
        &self.weights
    }

    pub fn payoffs(&self) -> &PayoffQuad<T> {
        &self.payoffs
    }

    pub fn pi(&self) -> &[T] {
        &self.weights.pi
    }

    /// Directed edges in coordinate order.
    pub fn edge_index(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn coord(&self, i: usize, j: usize) -> Option<usize> {
        self.edges.binary_search(&(i, j)).ok()
    }

    pub fn player_coords(&self, i: usize) -> Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    pub fn omega_at(&self, coord: usize) -> T {
        self.weights.omega[coord].2
    }
}

impl<T: Real> NetworkGame<T> {
    /// Solve for `π` numerically (tolerance 1e-12) and check the weight
    /// identities to 1e-10.
    pub fn from_transition(
        graph: GameGraph,
        k: TransitionMatrix<T>,
        payoffs: PayoffQuad<T>,
    ) -> Result<Self> {
        let report = validate_graph(&graph);
        if !report.passed {
            let v = &report.violations[0];
            return Err(Error::InvalidGraph(format!("{} at {:?}", v.condition, v.witness)));
        }
        let pi = stationary_distribution(&k, crate::scalar::lit(1e-12))?;
        Self::new(graph, k, &pi, payoffs, crate::scalar::lit(1e-10))
    }
}

/// Graph conditions, `CD < DD < CC < DC` and the per-edge Pareto conditions
/// `(ω_ij + ω_ji) DD < ω_ij CD + ω_ji DC < (ω_ij + ω_ji) CC`.
/// Reversibility is reported in `flags["reversible"]`.
pub fn validate_network<T: Scalar>(game: &NetworkGame<T>, tol: T) -> ValidationReport {
    let mut report = validate_graph(&game.graph);
    let p = game.payoffs;
    let order = [("cd<dd", p.cd, p.dd), ("dd<cc", p.dd, p.cc), ("cc<dc", p.cc, p.dc)];
    for (name, a, b) in order {
        if !(a < b + tol) {
            report.violate(name, Witness::Vertex(0), to_f64(a), to_f64(b));
        }
    }
    for (c, &(i, j)) in game.edges.iter().enumerate() {
        let w_ij = game.omega_at(c);
        let w_ji = game.omega_at(game.reverse[c]);
        let mixed = w_ij * p.cd + w_ji * p.dc;
        let low = (w_ij + w_ji) * p.dd;
        let high = (w_ij + w_ji) * p.cc;
        if !(low < mixed + tol) {
            report.violate("defection_inefficient", Witness::Pair(i, j), to_f64(low), to_f64(mixed));
        }
        if !(mixed < high + tol) {
            report.violate("cooperation_optimal", Witness::Pair(i, j), to_f64(mixed), to_f64(high));
        }
    }
    report
        .flags
        .insert("reversible".into(), game.weights.is_reversible(tol));
    report
}

/// `U(s)` indexed by directed edge.
pub fn network_payoff<T: Scalar>(game: &NetworkGame<T>, s: &[Action]) -> Result<StateVector<T>> {
    if s.len() != game.graph.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: game.graph.vertex_count(),
            found: s.len(),
        });
    }
    Ok(game.payoff(s))
}

/// `Σ_j K_ij u_ij`.
pub fn mean_payoff<T: Scalar>(game: &NetworkGame<T>, u: &[T], i: usize) -> T {
    game.player_coords(i).fold(T::zero(), |acc, c| {
        let (_, j) = game.edges[c];
        acc + game.k.get(i, j) * u[c]
    })
}

/// `μ^i(u) = Σ_{j ∈ Neigh(i)} ω_ij u_ij - ω_ji u_ji`.
pub fn mu_network<T: Scalar>(game: &NetworkGame<T>, i: usize, u: &[T]) -> T {
    game.player_coords(i).fold(T::zero(), |acc, c| {
        let r = game.reverse[c];
        acc + game.omega_at(c) * u[c] - game.omega_at(r) * u[r]
    })
}

impl<T: Scalar> PdGame<T> for NetworkGame<T> {
    fn player_count(&self) -> usize {
        self.graph.vertex_count()
    }

    fn payoff_dim(&self) -> usize {
        self.edges.len()
    }

    fn payoff_into(&self, s: &[Action], out: &mut [T]) {
        debug_assert_eq!(s.len(), self.player_count());
        for (o, &(i, j)) in out.iter_mut().zip(&self.edges) {
            *o = self.payoffs.lookup(s[i], s[j]);
        }
    }

    fn mu_coefficients(&self, player: usize) -> Vec<T> {
        let mut coeffs = vec![T::zero(); self.edges.len()];
        for c in self.player_coords(player) {
            let r = self.reverse[c];
            coeffs[c] = self.omega_at(c);
            coeffs[r] = T::zero() - self.omega_at(r);
        }
        coeffs
    }

    fn mu(&self, player: usize, u: &[T]) -> T {
        mu_network(self, player, u)
    }

    fn player_payoff(&self, player: usize, u: &[T]) -> T {
        mean_payoff(self, u, player)
    }

    fn coord_names(&self) -> Vec<String> {
        self.edges
            .iter()
            .map(|(i, j)| format!("u_{}_{}", i + 1, j + 1))
            .collect()
    }
}
