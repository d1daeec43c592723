#![allow(dead_code)]

use rand::Rng;
use rand_distr::Exp1;
use smale_core::game::{free_riding_game, NPlayerPayoffTable, StateSpace};
use smale_core::graph::{GameGraph, NetworkGame, PayoffQuad};

/// Free riding with `c = 1` and increments drawn from `[1/N, 1)`.
pub fn random_free_riding<R: Rng>(n: usize, rng: &mut R) -> NPlayerPayoffTable<f64> {
    let mut f = vec![rng.random_range(0.0..2.0)];
    for _ in 0..n {
        let inc = rng.random_range(1.0 / n as f64..0.999);
        f.push(f.last().unwrap() + inc);
    }
    free_riding_game(&f, 1.0, n).unwrap()
}

pub fn random_quad<R: Rng>(rng: &mut R) -> PayoffQuad<f64> {
    // CD < DD < CC < DC with DD < (CD + DC) / 2 < CC
    loop {
        let dd = rng.random_range(-1.0..1.0);
        let cc = dd + rng.random_range(0.2..2.0);
        let cd = dd - rng.random_range(0.1..2.0);
        let dc = cc + rng.random_range(0.1..2.0);
        let mid = (cd + dc) / 2.0;
        if dd < mid && mid < cc {
            return PayoffQuad::new(cd, dd, cc, dc);
        }
    }
}

pub fn topologies(m: usize) -> Vec<(&'static str, GameGraph)> {
    let mut out = vec![
        ("path", GameGraph::path(m)),
        ("star", GameGraph::star(m)),
        ("complete", GameGraph::complete(m)),
    ];
    if m >= 3 {
        out.push(("cycle", GameGraph::cycle(m)));
    }
    out
}

pub fn uniform_network(graph: GameGraph, quad: PayoffQuad<f64>) -> NetworkGame<f64> {
    NetworkGame::uniform(graph, quad, 1e-12).unwrap()
}

/// Convex combination of up to `support` random vertices. Sparse mixtures
/// reach the faces of `E`, which uniform weights over all vertices rarely do.
pub fn sparse_point<R: Rng>(space: &StateSpace<f64>, support: usize, rng: &mut R) -> Vec<f64> {
    let pts: Vec<&[f64]> = space.points().collect();
    let k = rng.random_range(1..=support.min(pts.len()));
    let w: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = w.iter().sum();
    let mut x = vec![0.0; space.dim()];
    for wk in w {
        let p = pts[rng.random_range(0..pts.len())];
        for (xi, &pi) in x.iter_mut().zip(p) {
            *xi += wk / total * pi;
        }
    }
    x
}
