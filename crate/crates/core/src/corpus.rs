//! Named fixture polytopes.

use crate::exact::IntVector;
use crate::polytope::Polytope;

fn named(name: &str, pts: Vec<Vec<i64>>) -> Polytope {
    Polytope::from_points(pts.into_iter().map(IntVector)).expect("fixture is valid").with_name(name)
}

/// `conv(0, e₁, …, eₙ)`.
pub fn unit_simplex(n: usize) -> Polytope {
    let mut pts = vec![vec![0; n]];
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        pts.push(e);
    }
    named(&format!("simplex{n}"), pts)
}

pub fn unit_square() -> Polytope {
    named("square", vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]])
}

/// The trapezoid `conv((0,0),(2,0),(1,1),(0,1))`.
pub fn trapezoid() -> Polytope {
    named("trapezoid", vec![vec![0, 0], vec![2, 0], vec![1, 1], vec![0, 1]])
}

/// A hexagon with 19 lattice points whose bottom edge carries the column `(0,−1)`.
pub fn hexagon() -> Polytope {
    named("hexagon", vec![vec![0, 0], vec![5, 0], vec![5, 2], vec![4, 3], vec![2, 3], vec![1, 2]])
}

/// `conv((0,0),(3,0),(3,2),(2,2))`: four columns and exactly two products.
pub fn quadrilateral() -> Polytope {
    named("quadrilateral", vec![vec![0, 0], vec![3, 0], vec![3, 2], vec![2, 2]])
}

/// The pyramid over the unit square: balanced but not Col-divisible.
pub fn pyramid() -> Polytope {
    named(
        "pyramid",
        vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0], vec![0, 0, 1]],
    )
}

/// `conv((0,0),(3,0),(0,1))`, which is not balanced.
pub fn slanted_triangle() -> Polytope {
    named("slanted-triangle", vec![vec![0, 0], vec![3, 0], vec![0, 1]])
}

/// A tetrahedron whose lattice points are its vertices and generate an
/// index-2 sublattice, so its semigroup misses `(1,1,1)` in degree 2.
pub fn non_normal_tetrahedron() -> Polytope {
    named(
        "even-tetrahedron",
        vec![vec![0, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]],
    )
}

/// `conv((0,0),(6,0),(1,2))`: three columns, all based on the bottom edge.
pub fn wide_triangle() -> Polytope {
    named("wide-triangle", vec![vec![0, 0], vec![6, 0], vec![1, 2]])
}

/// Every full-dimensional fixture.
pub fn all() -> Vec<Polytope> {
    vec![
        unit_simplex(1),
        unit_simplex(2),
        unit_simplex(2).dilate(2).with_name("simplex2x2"),
        unit_simplex(3),
        unit_square(),
        trapezoid(),
        hexagon(),
        quadrilateral(),
        pyramid(),
        slanted_triangle(),
        wide_triangle(),
        non_normal_tetrahedron(),
    ]
}
