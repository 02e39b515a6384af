use super::*;
use crate::corpus;

fn v(c: &[i64]) -> IntVector {
    IntVector(c.to_vec())
}

fn vecs(cs: &ColumnStructure) -> Vec<IntVector> {
    cs.columns().iter().map(|c| c.v.clone()).collect()
}

fn idx(cs: &ColumnStructure, c: &[i64]) -> usize {
    cs.index_of(&v(c)).unwrap_or_else(|| panic!("{c:?} is not a column"))
}

#[test]
fn quadrilateral_columns_and_products() {
    let cs = ColumnStructure::new(&corpus::quadrilateral()).unwrap();
    assert_eq!(vecs(&cs), vec![v(&[-1, -1]), v(&[-1, 0]), v(&[0, -1]), v(&[1, 0])]);
    let (u, vv, mv, w) = (idx(&cs, &[0, -1]), idx(&cs, &[-1, 0]), idx(&cs, &[1, 0]), idx(&cs, &[-1, -1]));
    let mut expected = vec![(u, vv, w), (w, mv, u)];
    expected.sort();
    assert_eq!(cs.products(), expected);
    assert_eq!(cs.table().get(vv, mv), PairEntry::SumZero);
    assert_eq!(cs.columns()[w].base, cs.columns()[u].base);
}

#[test]
fn square_columns_have_no_products() {
    let sq = corpus::unit_square();
    let cs = ColumnStructure::new(&sq).unwrap();
    assert_eq!(vecs(&cs), vec![v(&[-1, 0]), v(&[0, -1]), v(&[0, 1]), v(&[1, 0])]);
    assert!(cs.products().is_empty());
    let e1 = cs.columns()[idx(&cs, &[1, 0])].clone();
    let e2 = cs.columns()[idx(&cs, &[0, 1])].clone();
    assert_eq!(product(&sq, &e1, &e2).unwrap(), None);
    let e1neg = cs.columns()[idx(&cs, &[-1, 0])].clone();
    assert_eq!(product(&sq, &e1, &e1neg).unwrap(), None);
    let bogus = ColumnVector { v: v(&[1, 1]), base: 0 };
    assert!(matches!(product(&sq, &bogus, &e1), Err(ColumnError::Foreign(_))));
}

#[test]
fn pyramid_has_the_eight_edge_columns() {
    let cs = ColumnStructure::new(&corpus::pyramid()).unwrap();
    let mut expected = vec![
        v(&[1, 0, 0]),
        v(&[-1, 0, 0]),
        v(&[0, 1, 0]),
        v(&[0, -1, 0]),
        v(&[0, 0, -1]),
        v(&[1, 0, -1]),
        v(&[0, 1, -1]),
        v(&[1, 1, -1]),
    ];
    expected.sort();
    assert_eq!(vecs(&cs), expected);
}

#[test]
fn pruned_and_literal_enumeration_agree_on_corpus() {
    for p in corpus::all() {
        let p = p.normalize_full_dim().polytope;
        let a = column_vectors_with(&p, Pruning::HeightConstraint).unwrap();
        let b = column_vectors_with(&p, Pruning::Literal).unwrap();
        assert_eq!(a, b, "{:?}", p.name());
        let cs = ColumnStructure::new(&p).unwrap();
        for i in 0..cs.len() {
            assert_eq!(cs.column_height(i), -1);
        }
    }
}

#[test]
fn unnormalized_input_is_rejected() {
    let t = corpus::non_normal_tetrahedron();
    assert_eq!(ColumnStructure::new(&t).unwrap_err(), ColumnError::NotNormalized(3));
    let seg = crate::polytope::Polytope::from_points([[0, 0], [1, 0]]).unwrap();
    assert!(matches!(ColumnStructure::new(&seg), Err(ColumnError::Polytope(_))));
}

/// Oriented edges `pⱼ − pᵢ` of `Δₙ` compose exactly when the first ends
/// where the second starts and they are not opposite.
#[test]
fn unit_simplex_products_follow_edge_composition() {
    for n in 1..=3 {
        let p = corpus::unit_simplex(n);
        let cs = ColumnStructure::new(&p).unwrap();
        assert_eq!(cs.len(), n * (n + 1));
        let verts = p.vertices().to_vec();
        let edge = |i: usize, j: usize| idx(&cs, &(&verts[j] - &verts[i]));
        for i in 0..=n {
            for j in 0..=n {
                for k in 0..=n {
                    for l in 0..=n {
                        if i == j || k == l {
                            continue;
                        }
                        let expected = (j == k && l != i).then(|| edge(i, l));
                        assert_eq!(cs.product(edge(i, j), edge(k, l)), expected);
                    }
                }
            }
        }
    }
}

#[test]
fn weak_products() {
    let cs = ColumnStructure::new(&corpus::quadrilateral()).unwrap();
    let (u, vv, w) = (idx(&cs, &[0, -1]), idx(&cs, &[-1, 0]), idx(&cs, &[-1, -1]));
    assert_eq!(cs.weak_product(&[u]), Some(u));
    assert_eq!(cs.weak_product(&[u, vv]), Some(w));
    assert_eq!(cs.weak_product(&[vv, u]), None);
    let s = ColumnStructure::new(&corpus::unit_simplex(2)).unwrap();
    let p = corpus::unit_simplex(2);
    let e = |i: usize, j: usize| idx(&s, &(&p.vertices()[j] - &p.vertices()[i]));
    assert_eq!(s.weak_product(&[e(0, 1), e(1, 2)]), Some(e(0, 2)));
}

#[test]
fn weak_product_is_bracketing_independent() {
    let cs = ColumnStructure::new(&corpus::unit_simplex(3)).unwrap();
    let n = cs.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let left = cs.product(a, b).and_then(|ab| cs.product(ab, c));
                let right = cs.product(b, c).and_then(|bc| cs.product(a, bc));
                if let (Some(l), Some(r)) = (left, right) {
                    assert_eq!(l, r);
                }
                if let Some(x) = cs.weak_product(&[a, b, c]) {
                    assert_eq!(*cs.vector(x), &(cs.vector(a) + cs.vector(b)) + cs.vector(c));
                }
            }
        }
    }
}

#[test]
fn hulls() {
    let cs = ColumnStructure::new(&corpus::quadrilateral()).unwrap();
    let (u, vv, w) = (idx(&cs, &[0, -1]), idx(&cs, &[-1, 0]), idx(&cs, &[-1, -1]));
    let mut expected = vec![u, vv, w];
    expected.sort();
    assert_eq!(cs.strict_hull(&[u, vv]), expected);
    assert_eq!(cs.weak_hull(&[u, vv]), expected);
    assert_eq!(cs.strict_hull(&[u]), vec![u]);
    let sq = ColumnStructure::new(&corpus::unit_square()).unwrap();
    let (e, me) = (idx(&sq, &[1, 0]), idx(&sq, &[-1, 0]));
    assert_eq!(sq.strict_hull(&[e, me]), vec![me, e]);
    assert_eq!(sq.weak_hull(&[e, me]), vec![me, e]);
}

#[test]
fn balancedness() {
    assert!(ColumnStructure::new(&corpus::trapezoid()).unwrap().is_balanced());
    assert!(ColumnStructure::new(&corpus::pyramid()).unwrap().is_balanced());
    let b = ColumnStructure::new(&corpus::slanted_triangle()).unwrap().balance();
    assert!(!b.balanced);
    let w = b.witness.unwrap();
    assert_eq!(w.value, 3);
    // The slant form −x − 3y sits under (1,0) and gives 3 on (0,−1).
    let cs = ColumnStructure::new(&corpus::slanted_triangle()).unwrap();
    assert_eq!(cs.pairing(idx(&cs, &[1, 0]), idx(&cs, &[0, -1])), 3);
    assert_eq!(cs.pairing(idx(&cs, &w.u.0), idx(&cs, &w.v.0)), 3);
}

#[test]
fn divisibility() {
    for n in 1..=3 {
        let d = ColumnStructure::new(&corpus::unit_simplex(n)).unwrap().divisibility().unwrap();
        assert!(d.divisible, "simplex {n}: {:?}", d.witness);
    }
    let pyr = ColumnStructure::new(&corpus::pyramid()).unwrap().divisibility().unwrap();
    assert!(!pyr.divisible);
    assert!(pyr.witness.is_some());
    assert_eq!(
        ColumnStructure::new(&corpus::slanted_triangle()).unwrap().divisibility(),
        Err(ColumnError::NotBalanced)
    );
}

#[test]
fn polygon_classes() {
    let class = |p: &crate::polytope::Polytope| ColumnStructure::new(p).unwrap().classify().unwrap();
    assert_eq!(class(&corpus::unit_simplex(2)).class, PolygonClass::A);
    let a2 = class(&corpus::unit_simplex(2).dilate(2));
    assert_eq!(a2.class, PolygonClass::A);
    assert!(matches!(a2.witness, Some(ProjectiveWitness::SimplexMultiple { k: 2, .. })));
    let b = class(&corpus::trapezoid());
    assert_eq!(b.class, PolygonClass::B);
    assert_eq!(
        b.labels,
        vec![
            ("u".to_string(), v(&[1, -1])),
            ("v".to_string(), v(&[-1, 0])),
            ("-v".to_string(), v(&[1, 0])),
            ("w".to_string(), v(&[0, -1])),
        ]
    );
    assert!(b.witness.is_some());
    let e = class(&corpus::unit_square());
    assert_eq!(e.class, PolygonClass::E);
    assert!(e.witness.is_some());
    assert_eq!(class(&corpus::quadrilateral()).class, PolygonClass::B);
    assert_eq!(
        ColumnStructure::new(&corpus::pyramid()).unwrap().classify().unwrap_err(),
        ColumnError::NotAPolygon(3)
    );
}

#[test]
fn rigid_systems() {
    let p = corpus::unit_simplex(3);
    let cs = ColumnStructure::new(&p).unwrap();
    let verts = p.vertices().to_vec();
    let forward: Vec<usize> = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .map(|(i, j)| idx(&cs, &(&verts[j] - &verts[i])))
        .collect();
    match cs.rigidity(&forward) {
        Rigidity::Rigid(cert) => {
            assert_eq!(cert.graph.vertices, 4);
            assert_eq!(cert.graph.edges.len(), 3);
            assert_eq!(cert.graph.path_classes().len(), 6);
            verify_certificate(&cs, &forward, &cert).unwrap();
        }
        other => panic!("expected rigid, got {other:?}"),
    }

    let sq = ColumnStructure::new(&corpus::unit_square()).unwrap();
    let pair = [idx(&sq, &[1, 0]), idx(&sq, &[-1, 0])];
    assert!(matches!(sq.rigidity(&pair), Rigidity::NotRigid(reason) if reason.contains('±')));

    let f2 = ColumnStructure::new(&corpus::quadrilateral()).unwrap();
    let uvw = [idx(&f2, &[0, -1]), idx(&f2, &[-1, 0]), idx(&f2, &[-1, -1])];
    match f2.rigidity(&uvw) {
        Rigidity::Rigid(cert) => {
            assert_eq!(cert.graph.vertices, 3);
            verify_certificate(&f2, &uvw, &cert).unwrap();
        }
        other => panic!("expected rigid, got {other:?}"),
    }
}

#[test]
fn tampered_certificates_fail() {
    let f2 = ColumnStructure::new(&corpus::quadrilateral()).unwrap();
    let uvw = [idx(&f2, &[0, -1]), idx(&f2, &[-1, 0]), idx(&f2, &[-1, -1])];
    let Rigidity::Rigid(mut cert) = f2.rigidity(&uvw) else { panic!() };
    let pair0 = cert.labels[0].1;
    cert.labels[0].1 = cert.labels[1].1;
    cert.labels[1].1 = pair0;
    assert!(verify_certificate(&f2, &uvw, &cert).is_err());
}

#[test]
fn k_morphisms() {
    let sq = ColumnStructure::new(&corpus::unit_square()).unwrap();
    let id: Vec<usize> = (0..sq.len()).collect();
    assert!(check_k_morphism(&sq, &sq, &id).is_empty());
    // u ↔ v, −u ↔ −v
    let mut swap = vec![0; 4];
    for (a, b) in [([1, 0], [0, 1]), ([-1, 0], [0, -1])] {
        swap[idx(&sq, &a)] = idx(&sq, &b);
        swap[idx(&sq, &b)] = idx(&sq, &a);
    }
    assert!(check_k_morphism(&sq, &sq, &swap).is_empty());

    let f2 = ColumnStructure::new(&corpus::quadrilateral()).unwrap();
    let mut mu: Vec<usize> = (0..f2.len()).collect();
    mu[idx(&f2, &[-1, -1])] = idx(&f2, &[0, -1]);
    let violations = check_k_morphism(&f2, &f2, &mu);
    assert!(violations.iter().any(|x| matches!(x, KViolation::Product { .. })));
}

#[test]
fn exports() {
    let cs = ColumnStructure::new(&corpus::quadrilateral()).unwrap();
    let json: serde_json::Value = serde_json::from_str(&cs.to_json()).unwrap();
    assert_eq!(json["columns"].as_array().unwrap().len(), 4);
    assert_eq!(json["products"].as_array().unwrap().len(), 2);
    let dot = cs.to_dot();
    assert_eq!(dot.matches(" -> ").count(), 2);
    assert_eq!(dot.matches("[label=\"(").count(), 4);
    assert!(dot.contains("·(-1,0)"));
}
