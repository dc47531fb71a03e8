//! Gauss-Legendre rules with a process-wide node cache.

use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::ops::{Add, Mul};
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::GaussLegendre;

/// Nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

pub fn rule(order: usize) -> Arc<Rule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Rule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("quadrature cache poisoned");
    map.entry(order)
        .or_insert_with(|| {
            let gl = GaussLegendre::new(NonZeroUsize::new(order.max(1)).unwrap());
            let (nodes, weights) = gl.iter().map(|(x, w)| (*x, *w)).unzip();
            Arc::new(Rule { nodes, weights })
        })
        .clone()
}

/// ∫_a^b f with an `order`-point Gauss-Legendre rule.
pub fn gauss_legendre<T, F>(order: usize, a: f64, b: f64, mut f: F) -> T
where
    T: Default + Add<Output = T> + Mul<f64, Output = T>,
    F: FnMut(f64) -> T,
{
    let r = rule(order);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    let mut acc = T::default();
    for (x, w) in r.nodes.iter().zip(&r.weights) {
        acc = acc + f(mid + half * x) * (w * half);
    }
    acc
}
