//! End-to-end acceptance run: one PASS/FAIL line per criterion with timing.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use hk_core::combinatorics::{
    alternating_series, cardinality_formula, catalan_check, fibonacci_odd, idempotent_count,
    multiplicity_free_count, reversal_family, reversal_inequality_check,
};
use hk_core::families;
use hk_core::presentation::RelationKind;
use hk_core::representation::{
    check_cycle_powers, check_effective, check_well_defined, represent, zn_representation_check, WeightFunction,
};
use hk_core::rewrite::{enumerate_graph, oracle_agreement, zero_power_check, OracleAgreement};
use hk_core::{DirectedGraph, VertexId, VertexSet, Word};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: hk_core::HkError) -> String {
    e.to_string()
}

fn catalan_cardinalities() -> Outcome {
    let expected = [2u32, 5, 14, 42, 132, 429];
    for (n, want) in (1..=6).zip(expected) {
        let r = catalan_check(n).map_err(err)?;
        ensure(r.passed() && r.enumerated == BigInt::from(want), || {
            format!("n={n}: enumerated {} formula {} expected {want}", r.enumerated, r.formula)
        })?;
    }
    Ok("n=1..6 give 2 5 14 42 132 429".into())
}

fn fibonacci_cardinalities() -> Outcome {
    let expected = [1u32, 2, 5, 13, 34, 89, 233];
    let (reports, recursion) = alternating_series(6).map_err(err)?;
    for (r, want) in reports.iter().zip(expected) {
        ensure(r.passed() && r.enumerated == BigInt::from(want), || {
            format!("{}: enumerated {} expected {want}", r.graph, r.enumerated)
        })?;
    }
    ensure(reports.len() == 7, || format!("{} reports", reports.len()))?;
    ensure(recursion, || "f(n+1) = 3f(n) - f(n-1) fails".into())?;
    Ok("n=0..6 give 1 2 5 13 34 89 233, recursion holds".into())
}

fn orientations(max_n: usize) -> Vec<(String, DirectedGraph)> {
    (1..=max_n)
        .flat_map(|n| {
            families::all_orientations(n)
                .unwrap()
                .into_iter()
                .map(move |(m, g)| (format!("orient({n},{m})"), g))
        })
        .collect()
}

fn full_formula() -> Outcome {
    let graphs = orientations(5);
    for (id, g) in &graphs {
        let r = cardinality_formula(g).map_err(err)?;
        ensure(r.passed(), || format!("{id}: formula {} enumerated {}", r.formula, r.enumerated))?;
    }
    Ok(format!("{} orientations, n=1..5", graphs.len()))
}

fn multiplicity_free() -> Outcome {
    let graphs = orientations(5);
    for (id, g) in &graphs {
        let r = multiplicity_free_count(g).map_err(err)?;
        let want = BigInt::from(fibonacci_odd(g.vertex_count() as u64));
        ensure(r.passed() && r.enumerated == want, || {
            format!("{id}: {} multiplicity-free elements, expected {want}", r.enumerated)
        })?;
    }
    Ok(format!("{} orientations match F(2n+1)", graphs.len()))
}

fn idempotents() -> Outcome {
    let mut checked = 0;
    for (id, g) in families::fixtures() {
        if g.vertex_count() > 5 || g.has_oriented_cycle(g.all()) {
            continue;
        }
        let r = idempotent_count(&g).map_err(err)?;
        let two_n = BigInt::from(1u64 << g.vertex_count());
        ensure(r.passed() && r.enumerated == two_n && r.formula == two_n, || {
            format!("{id}: {} idempotents, {} acyclic subsets, 2^n = {two_n}", r.enumerated, r.formula)
        })?;
        checked += 1;
    }
    let tri = idempotent_count(&families::triangle()).map_err(err)?;
    ensure(tri.passed() && tri.formula == BigInt::from(7), || {
        format!("triangle: {} vs {}", tri.formula, tri.enumerated)
    })?;
    Ok(format!("{checked} acyclic fixtures give 2^n; triangle 7 vs {}", tri.enumerated))
}

fn constant(g: &DirectedGraph, c: i64) -> WeightFunction {
    WeightFunction::constant(g, c).unwrap()
}

fn effectiveness_all_orientations() -> Outcome {
    let graphs = orientations(5);
    for (id, g) in &graphs {
        let (_, t) = enumerate_graph(g, 10_000).map_err(err)?;
        let r = check_effective(g, &constant(g, 1), &t).map_err(err)?;
        ensure(r.effective && r.distinct_matrices == t.len(), || {
            format!("{id}: {} matrices for {} elements", r.distinct_matrices, t.len())
        })?;
    }
    Ok(format!("{} orientations, distinct matrices = elements", graphs.len()))
}

fn weight_independence() -> Outcome {
    for n in 1..=5 {
        let g = families::chain(n).unwrap();
        let (_, t) = enumerate_graph(&g, 10_000).map_err(err)?;
        let mixed: BTreeMap<(VertexId, VertexId), BigInt> = g
            .edges()
            .into_iter()
            .zip([3i64, -1, 5, -7].into_iter().cycle())
            .map(|(e, w)| (e, BigInt::from(w)))
            .collect();
        let fs = [
            ("f=1", constant(&g, 1)),
            ("f=2", constant(&g, 2)),
            ("mixed", WeightFunction::from_map(&g, mixed, false).map_err(err)?),
        ];
        for (name, f) in &fs {
            let r = check_effective(&g, f, &t).map_err(err)?;
            ensure(r.effective, || format!("chain({n}) {name}: {} matrices for {}", r.distinct_matrices, t.len()))?;
        }
    }
    Ok("chain(1..5) effective for f=1, f=2 and mixed weights".into())
}

fn unoriented_failure() -> Outcome {
    let g = families::unoriented();
    let (a, b) = (VertexId::new(0), VertexId::new(1));
    let f = WeightFunction::parse(&g, "a->b=0,b->a=1", None, true).map_err(err)?;
    let (_, t) = enumerate_graph(&g, 100).map_err(err)?;
    let r = check_effective(&g, &f, &t).map_err(err)?;
    let (x, y) = r.collision.ok_or("no collision reported")?;
    let pair = (t.normal_form(x).display(&g).to_string(), t.normal_form(y).display(&g).to_string());
    ensure(pair == ("ba".into(), "aba".into()), || format!("collision {pair:?}"))?;
    let ba = Word::new(vec![b, a]);
    let aba = Word::new(vec![a, b, a]);
    ensure(represent(&g, &f, &ba) == represent(&g, &f, &aba), || "R(ba) != R(aba)".into())?;

    let nonzero = WeightFunction::parse(&g, "a->b=2,b->a=3", None, false).map_err(err)?;
    let wd = check_well_defined(&g, &nonzero);
    ensure(!wd.ok && wd.failures.iter().any(|r| r.kind == RelationKind::Braid), || {
        format!("well defined {}, failures {:?}", wd.ok, wd.failures)
    })?;
    Ok(format!("collision {} = {}; braid relation breaks nonzero weights", pair.0, pair.1))
}

fn zn_theorem() -> Outcome {
    let mut sizes = Vec::new();
    for n in 4..=6 {
        let r = zn_representation_check(n).map_err(err)?;
        ensure(r.passed() && r.uncovered == 0 && r.ambiguous == 0, || {
            format!(
                "Z_{n}: effective {} ({} of {}), uncovered {}, ambiguous {}",
                r.effectiveness.effective,
                r.effectiveness.distinct_matrices,
                r.effectiveness.elements,
                r.uncovered,
                r.ambiguous
            )
        })?;
        sizes.push(format!("Z_{n}={}", r.effectiveness.elements));
    }
    Ok(sizes.join(" "))
}

fn cycle_dichotomy() -> Outcome {
    let tri = families::triangle();
    let w = Word::new(tri.vertices().collect());
    let r = check_cycle_powers(&tri, &constant(&tri, 2), &w, 10).map_err(err)?;
    let exps: Vec<u64> = r.exponents.iter().map(|e| e.ok_or("missing exponent")).collect::<Result<_, _>>()?;
    ensure(r.holds && r.pairwise_distinct && exps.windows(2).all(|p| p[0] < p[1]), || {
        format!("exponents {exps:?}")
    })?;

    let mut words = 0;
    for (id, g) in families::fixtures() {
        if g.vertex_count() == 0 || g.vertex_count() > 4 || g.has_oriented_cycle(g.all()) {
            continue;
        }
        let (_, t) = enumerate_graph(&g, 10_000).map_err(err)?;
        for bits in 1..1u64 << g.vertex_count() {
            let s = VertexSet::from_bits(bits);
            for w in [s.iter().collect::<Word>(), s.iter().collect::<Word>().reversed()] {
                let z = zero_power_check(&t, &g, &w).map_err(err)?;
                ensure(z.holds, || format!("{id}: {} is not stable at its content size", w.display(&g)))?;
                words += 1;
            }
        }
    }
    Ok(format!("triangle exponents {exps:?}; {words} acyclic words reach their zero"))
}

fn oracle() -> Outcome {
    let mut finite = 0;
    let mut unbounded = 0;
    for (id, g) in families::fixtures() {
        if g.vertex_count() > 4 {
            continue;
        }
        let r = oracle_agreement(&g, 6, 2, 200_000).map_err(|e| format!("{id}: {e}"))?;
        ensure(r.agrees(), || format!("{id}: {r:?}"))?;
        match r {
            OracleAgreement::Finite { words_agree, .. } => {
                ensure(words_agree, || format!("{id}: word classes differ"))?;
                finite += 1;
            }
            _ => unbounded += 1,
        }
    }
    Ok(format!("{finite} finite fixtures agree; {unbounded} unbounded on both sides"))
}

fn reversal() -> Outcome {
    let family = reversal_family();
    let mut strict = 0;
    for (g, s1, s2) in &family {
        let r = reversal_inequality_check(g, *s1, *s2).map_err(err)?;
        ensure(r.passed(), || {
            format!("{}: {} vs {} (isolated {})", r.graph, r.original, r.reversed, r.isolated_in_piece)
        })?;
        if r.original < r.reversed {
            strict += 1;
        }
    }
    Ok(format!("{} glued graphs, {strict} strict", family.len()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("catalan cardinalities", catalan_cardinalities, Some(10)),
        ("fibonacci cardinalities", fibonacci_cardinalities, Some(10)),
        ("full cardinality formula", full_formula, Some(60)),
        ("multiplicity-free count", multiplicity_free, Some(60)),
        ("idempotents", idempotents, None),
        ("effectiveness over orientations", effectiveness_all_orientations, Some(120)),
        ("weight independence", weight_independence, None),
        ("unoriented edge failure", unoriented_failure, None),
        ("Z_n representation", zn_theorem, Some(120)),
        ("cycle dichotomy", cycle_dichotomy, None),
        ("oracle agreement", oracle, None),
        ("reversal inequality", reversal, None),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let over = limit.is_some_and(|s| took > Duration::from_secs(s));
        let (verdict, detail) = match (&result, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {}s limit", limit.unwrap())),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        let limit = limit.map_or(String::new(), |s| format!(" / {s}s"));
        println!("{verdict} {:>2} {name:<32} {:>7.2}s{limit}  {detail}", i + 1, took.as_secs_f64());
    }
    println!(
        "acceptance: {} of {} passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        total.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
