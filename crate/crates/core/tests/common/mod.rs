#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use orlicz_core::rng::SeededRng;
use orlicz_core::{CayleyBall, FiniteFunction, GroupSpec};

pub fn ball(spec: &str, r: usize) -> CayleyBall {
    CayleyBall::build(&spec.parse::<GroupSpec>().unwrap(), r).unwrap()
}

pub fn random_function(ball: &CayleyBall, rng: &mut SeededRng, amplitude: f64) -> FiniteFunction {
    let values = (0..ball.len()).map(|_| amplitude * rng.symmetric()).collect();
    ball.function(values).unwrap()
}

pub fn random_interior(ball: &CayleyBall, rng: &mut SeededRng, amplitude: f64) -> FiniteFunction {
    let values = (0..ball.len()).map(|x| if ball.is_interior(x) { amplitude * rng.symmetric() } else { 0.0 }).collect();
    ball.function(values).unwrap()
}

/// Harmonic extension for Φ(x) = c·x² by a dense linear solve of the graph
/// Laplace equation at interior vertices.
pub fn linear_harmonic(ball: &CayleyBall, f: &FiniteFunction) -> Vec<f64> {
    let interior: Vec<usize> = ball.interior().collect();
    let mut slot = vec![usize::MAX; ball.len()];
    for (i, &x) in interior.iter().enumerate() {
        slot[x] = i;
    }
    let n = interior.len();
    let mut a = DMatrix::<f64>::zeros(n, n);
    let mut b = DVector::<f64>::zeros(n);
    for (i, &x) in interior.iter().enumerate() {
        for s in 0..ball.generator_count() {
            let y = ball.neighbor(s, x).unwrap();
            a[(i, i)] += 1.0;
            if slot[y] == usize::MAX {
                b[i] += f.values[y];
            } else {
                a[(i, slot[y])] -= 1.0;
            }
        }
    }
    let sol = a.lu().solve(&b).expect("Dirichlet Laplacian is nonsingular");
    let mut h = f.values.clone();
    for (i, &x) in interior.iter().enumerate() {
        h[x] = sol[i];
    }
    h
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn coord(ball: &CayleyBall, x: usize) -> i64 {
    match ball.vertex(x) {
        orlicz_core::GroupElement::Vector(v) => v[0],
        _ => panic!("not a lattice point"),
    }
}
