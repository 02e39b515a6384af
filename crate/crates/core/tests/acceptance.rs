//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed, in order.

use std::any::Any;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polycol::algebra::{inversion_subgroup, sigma_group, verify_afemb, verify_steinberg, GradedAutomorphism};
use polycol::columns::{ColumnStructure, PolygonClass, Pruning, Rigidity};
use polycol::corpus;
use polycol::doubling::{double_along_facet, double_along_facet_with_section, doubling_spectrum};
use polycol::exact::{integer_kernel, IntMatrix, IntPoly, IntVector};
use polycol::polytope::Polytope;
use polycol::report::scan_polygons;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn v(c: &[i64]) -> IntVector {
    IntVector(c.to_vec())
}

fn cs(p: &Polytope) -> ColumnStructure {
    ColumnStructure::new(p).expect("normalized fixture")
}

fn idx(cs: &ColumnStructure, c: &[i64]) -> Result<usize, String> {
    cs.index_of(&v(c)).ok_or_else(|| format!("{c:?} is not a column"))
}

fn c1_quadrilateral() -> Outcome {
    let c = cs(&corpus::quadrilateral());
    let got: Vec<IntVector> = c.columns().iter().map(|x| x.v.clone()).collect();
    let mut want = vec![v(&[0, -1]), v(&[-1, 0]), v(&[1, 0]), v(&[-1, -1])];
    want.sort();
    ensure!(got == want, "Col = {got:?}");
    let products = c.products();
    ensure!(products.len() == 2, "{} products", products.len());
    let (u, vv, mv, w) = (idx(&c, &[0, -1])?, idx(&c, &[-1, 0])?, idx(&c, &[1, 0])?, idx(&c, &[-1, -1])?);
    ensure!(c.product(u, vv) == Some(w) && c.product(w, mv) == Some(u), "products {products:?}");
    Ok("4 columns, uv = w and w(−v) = u".into())
}

fn c2_named_classes() -> Outcome {
    let class = |p: &Polytope| cs(p).classify().map_err(|e| e.to_string());
    ensure!(class(&corpus::unit_simplex(2))?.class == PolygonClass::A, "Δ₂");
    ensure!(class(&corpus::unit_simplex(2).dilate(2))?.class == PolygonClass::A, "2Δ₂");
    let b = class(&corpus::trapezoid())?;
    ensure!(b.class == PolygonClass::B, "trapezoid is {:?}", b.class);
    let label = |name: &str| b.labels.iter().find(|(l, _)| l == name).map(|(_, x)| x.clone());
    let c = cs(&corpus::trapezoid());
    let at = |name: &str| label(name).and_then(|x| c.index_of(&x)).ok_or(format!("no label {name}"));
    let (u, vv, mv, w) = (at("u")?, at("v")?, at("-v")?, at("w")?);
    ensure!(c.product(u, vv) == Some(w), "uv ≠ w");
    ensure!(c.product(w, mv) == Some(u), "w(−v) ≠ u");
    ensure!(class(&corpus::unit_square())?.class == PolygonClass::E, "square");
    Ok("Δ₂, 2Δ₂ → a; trapezoid → b; square → e".into())
}

fn c3_scan() -> Outcome {
    let s = scan_polygons(4, 1).map_err(|e| e.to_string())?;
    let classified: usize = s.per_class.values().sum();
    ensure!(s.unclassified.is_empty(), "unclassified: {:?}", s.unclassified);
    ensure!(classified == s.balanced, "{classified} classified of {} balanced", s.balanced);
    ensure!(s.not_divisible.is_empty(), "not divisible: {:?}", s.not_divisible);
    ensure!(s.sample_mismatches.is_empty(), "pruning mismatches: {:?}", s.sample_mismatches);
    Ok(format!("{} polygons, {} balanced, per class {:?}", s.polygons, s.balanced, s.per_class))
}

fn c4_steinberg() -> Outcome {
    let start = Instant::now();
    let fixtures = [
        corpus::unit_simplex(2),
        corpus::unit_simplex(3),
        corpus::unit_square(),
        corpus::trapezoid(),
        corpus::pyramid(),
    ];
    let mut pairs = 0;
    for p in &fixtures {
        let r = verify_steinberg(&cs(p)).map_err(|e| e.to_string())?;
        ensure!(r.all_hold(), "{:?}: {:?}", p.name(), r.pairs.iter().find(|c| format!("{:?}", c.status).contains("false")));
        pairs += r.pairs.len();
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!("{pairs} ordered pairs in {elapsed:.2?}"))
}

fn c5_simplices() -> Outcome {
    for n in 1..=3usize {
        let p = corpus::unit_simplex(n);
        let c = cs(&p);
        ensure!(c.len() == n * (n + 1), "Δ_{n}: |Col| = {}", c.len());
        let lambda = IntPoly::var(0);
        for col in c.columns() {
            let e = GradedAutomorphism::elementary(&c, &col.v, lambda.clone()).map_err(|e| e.to_string())?;
            let m = e.matrix();
            let off = m.off_diagonal_support();
            ensure!(off.len() == 1, "Δ_{n}, {}: support {off:?}", col.v);
            ensure!(m.get(off[0].0, off[0].1) == &lambda, "entry is not λ");
            ensure!((0..m.rows()).all(|i| m.get(i, i) == &IntPoly::one()), "diagonal is not 1");
        }
        // Columns are the edge vectors vⱼ − vᵢ; products compose edges.
        let verts = p.vertices();
        let edge = |i: usize, j: usize| c.index_of(&(&verts[j] - &verts[i]));
        for i in 0..=n {
            for j in 0..=n {
                for k in 0..=n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let (ij, jk, ik) = (edge(i, j).unwrap(), edge(j, k).unwrap(), edge(i, k).unwrap());
                    ensure!(c.product(ij, jk) == Some(ik), "Δ_{n}: ({i}{j})({j}{k}) ≠ ({i}{k})");
                }
            }
        }
        let composable = (0..=n).flat_map(|i| (0..=n).map(move |j| (i, j))).filter(|(i, j)| i != j).count() * (n - 1);
        ensure!(c.products().len() == composable, "Δ_{n}: {} products", c.products().len());
    }
    Ok("|Col(Δ_n)| = n(n+1), elementary matrices and products as expected for n ≤ 3".into())
}

fn c6_doubling() -> Outcome {
    for n in 1..=3usize {
        let p = corpus::unit_simplex(n);
        let target = corpus::unit_simplex(n + 1);
        for f in 0..p.facets().unwrap().len() {
            let r = double_along_facet(&p, f).map_err(|e| e.to_string())?;
            ensure!(r.polytope().integral_affine_equivalent(&target).is_some(), "Δ_{n} facet {f}");
        }
    }
    let pool: Vec<Polytope> = corpus::all().into_iter().filter(|p| p.normalize_full_dim().is_identity()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..20 {
        let p = &pool[rng.gen_range(0..pool.len())];
        let f = rng.gen_range(0..p.facets().unwrap().len());
        let base = double_along_facet(p, f).map_err(|e| e.to_string())?;
        let a = IntMatrix::from_rows(std::slice::from_ref(&p.facet(f).normal)).unwrap();
        let mut w = base.section.clone();
        for k in integer_kernel(&a) {
            w = &w + &k.scale(rng.gen_range(-3..=3));
        }
        let other = double_along_facet_with_section(p, f, &w).map_err(|e| e.to_string())?;
        ensure!(
            base.polytope().integral_affine_equivalent(other.polytope()).is_some(),
            "{:?} facet {f}: sections {} and {w} disagree",
            p.name(),
            base.section
        );
    }
    Ok("Δ_n doubles to Δ_(n+1) for n ≤ 3; 20 random sections agree".into())
}

fn c7_pyramid() -> Outcome {
    let c = cs(&corpus::pyramid());
    ensure!(c.len() == 8, "|Col| = {}", c.len());
    ensure!(c.is_balanced(), "not balanced");
    let d = c.divisibility().map_err(|e| e.to_string())?;
    ensure!(!d.divisible, "divisible");
    let w = d.witness.ok_or("no witness")?;
    Ok(format!("witness {}", serde_json::to_string(&w).unwrap()))
}

fn random_polytope(rng: &mut ChaCha8Rng) -> Option<Polytope> {
    let dim = rng.gen_range(2..=3);
    let count = rng.gen_range(dim + 1..=dim + 4);
    let pts: Vec<IntVector> = (0..count).map(|_| IntVector((0..dim).map(|_| rng.gen_range(0..=3)).collect())).collect();
    let p = Polytope::from_points(pts).ok()?;
    p.is_full_dimensional().then(|| p.normalize_full_dim().polytope)
}

fn c8_heights() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut pool: Vec<Polytope> = corpus::all().into_iter().map(|p| p.normalize_full_dim().polytope).collect();
    let corpus_len = pool.len();
    while pool.len() < corpus_len + 200 {
        if let Some(p) = random_polytope(&mut rng) {
            pool.push(p);
        }
    }
    let mut columns = 0;
    for p in &pool {
        let pruned = ColumnStructure::new(p).map_err(|e| e.to_string())?;
        let literal = ColumnStructure::with_pruning(p, Pruning::Literal).map_err(|e| e.to_string())?;
        ensure!(pruned.columns() == literal.columns(), "{:?}: pruned and literal differ", p.vertices());
        for i in 0..pruned.len() {
            ensure!(pruned.column_height(i) == -1, "{:?}: column {} has height {}", p.vertices(), pruned.vector(i), pruned.column_height(i));
        }
        columns += pruned.len();
    }
    Ok(format!("{} polytopes, {columns} columns", pool.len()))
}

fn c9_symmetries() -> Outcome {
    let sigma = |p: &Polytope| sigma_group::<IntPoly>(p).map(|g| g.len()).map_err(|e| e.to_string());
    ensure!(sigma(&corpus::unit_simplex(2))? == 6, "|Σ(Δ₂)|");
    ensure!(sigma(&corpus::unit_square())? == 8, "|Σ(square)|");
    let sq = inversion_subgroup(&cs(&corpus::unit_square())).map_err(|e| e.to_string())?;
    ensure!(sq.inv_order == 4 && sq.quotient_order == 2, "{sq:?}");
    let mut checked = 0;
    for p in corpus::all().into_iter().filter(|p| p.normalize_full_dim().is_identity()) {
        let r = inversion_subgroup(&cs(&p)).map_err(|e| e.to_string())?;
        ensure!(r.normal, "{:?}: Σ_inv not normal", p.name());
        checked += 1;
    }
    Ok(format!("orders 6, 8, 4, quotient 2; normal on {checked} fixtures"))
}

fn c10_afemb() -> Outcome {
    let c = cs(&corpus::wide_triangle());
    let class = c.classify().map_err(|e| e.to_string())?;
    ensure!(class.class == PolygonClass::D, "class {:?}", class.class);
    let facet = c.columns()[0].base;
    let r = verify_afemb(&c, facet).map_err(|e| e.to_string())?;
    ensure!(r.columns.len() >= 3, "{} columns", r.columns.len());
    ensure!(r.commute, "commutators");
    ensure!(r.homomorphism, "homomorphism");
    ensure!(r.distinct_images == 25, "{} distinct images", r.distinct_images);
    Ok(format!("{} columns on one base edge, 25 distinct images", r.columns.len()))
}

fn c11_rigid() -> Outcome {
    let p = corpus::unit_simplex(3);
    let c = cs(&p);
    let verts = p.vertices().to_vec();
    let forward: Vec<usize> = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .map(|(i, j)| c.index_of(&(&verts[j] - &verts[i])).unwrap())
        .collect();
    match c.rigidity(&forward) {
        Rigidity::Rigid(cert) => ensure!(
            cert.graph.vertices == 4 && cert.graph.edges.len() == 3,
            "graph {:?}",
            cert.graph
        ),
        other => return Err(format!("Δ₃ forward edges: {other:?}")),
    }
    let sq = cs(&corpus::unit_square());
    let pair = [idx(&sq, &[1, 0])?, idx(&sq, &[-1, 0])?];
    ensure!(matches!(sq.rigidity(&pair), Rigidity::NotRigid(_)), "square {{v, −v}}");
    let f2 = cs(&corpus::quadrilateral());
    let uvw = [idx(&f2, &[0, -1])?, idx(&f2, &[-1, 0])?, idx(&f2, &[-1, -1])?];
    ensure!(matches!(f2.rigidity(&uvw), Rigidity::Rigid(_)), "{{u, v, w}}");
    Ok("Δ₃ chain of 4 vertices; square {v, −v} not rigid; {u, v, w} rigid".into())
}

fn c12_spectrum() -> Outcome {
    let p = corpus::trapezoid();
    let a = doubling_spectrum(&p, 4).map_err(|e| e.to_string())?;
    let b = doubling_spectrum(&p, 4).map_err(|e| e.to_string())?;
    ensure!(a.to_json() == b.to_json(), "logs differ");
    ensure!(a.log.steps.len() == 4, "{} steps", a.log.steps.len());
    ensure!(a.is_fair(), "unfair: {:?}", a.log.ledger.iter().find(|r| !r.is_fair()));
    Ok(format!("{} byte log, {} ledger entries", a.to_json().len(), a.log.ledger.len()))
}

fn panic_message(e: &(dyn Any + Send)) -> String {
    e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default()
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("quadrilateral columns and products", c1_quadrilateral),
        ("named polygon classes", c2_named_classes),
        ("box-4 polygon scan", c3_scan),
        ("Steinberg relations", c4_steinberg),
        ("simplices", c5_simplices),
        ("doubling", c6_doubling),
        ("pyramid", c7_pyramid),
        ("column heights and pruning", c8_heights),
        ("symmetry groups", c9_symmetries),
        ("same-base embedding", c10_afemb),
        ("rigid systems", c11_rigid),
        ("doubling spectrum", c12_spectrum),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| Err(format!("panicked: {}", panic_message(&*e))));
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
