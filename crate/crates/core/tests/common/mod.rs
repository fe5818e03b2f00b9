#![allow(dead_code)]

use std::sync::Arc;

use tiltbench::algebra::path_algebra;
use tiltbench::{BasedAlgebra, ExactStructure, Quiver, Universe};

pub fn a2() -> Arc<BasedAlgebra> {
    let q = Quiver::new().vertex("1").vertex("2").arrow("a", "1", "2");
    Arc::new(path_algebra(&q, 2).unwrap())
}

pub fn a3() -> Arc<BasedAlgebra> {
    let q = Quiver::new()
        .vertex("1")
        .vertex("2")
        .vertex("3")
        .arrow("a", "1", "2")
        .arrow("b", "2", "3");
    Arc::new(path_algebra(&q, 2).unwrap())
}

pub fn dual() -> Arc<BasedAlgebra> {
    let q = Quiver::new().vertex("1").arrow("x", "1", "1").relation(&[(1, "x.x")]);
    Arc::new(path_algebra(&q, 2).unwrap())
}

pub fn universe(alg: &Arc<BasedAlgebra>, bound: &[usize]) -> (ExactStructure, Universe) {
    let s = ExactStructure::abelian(alg.clone()).unwrap();
    let u = Universe::enumerate(s.clone(), bound, tiltbench::DEFAULT_BUDGET).unwrap();
    (s, u)
}
