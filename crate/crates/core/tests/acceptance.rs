//! Acceptance criteria. Each prints one PASS/FAIL line to stderr.
//!
//! The criteria run one after another inside a single test so that their
//! timings are not distorted by each other.

use std::collections::{BTreeMap, HashSet};
use std::io::{self, Write};
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use acd_core::code::{singleton_bound, DEFAULT_CODEWORD_BOUND};
use acd_core::construct::{
    construct_acd1, construct_acd2, construct_bound, construct_f4, construct_length1, construct_n_2n2,
    ConstructionReport,
};
use acd_core::duality::{count_skew, count_symmetric, enumerate_dualities, CharacterTable, DEFAULT_TABLE_BOUND};
use acd_core::fpmat::gaussian_binomial;
use acd_core::ortho::{check_acd, check_identities, dual, gram_of_rows, Identity};
use acd_core::search::{
    self, construction_best, exhaustive_best, expected_cells, reproduce_table, verify_witness, CellStatus, Method,
    Optimality, TableMode, TableName, TableOptions, DEFAULT_BUDGET, DEFAULT_TRIALS,
};
use acd_core::{AdditiveCode, ClassFilter, Duality, DualityClass, FieldSpec, FpMatrix, GFVector, Prime};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn named(name: &str) -> Duality {
    Duality::named(name).unwrap()
}

fn rows(d: &Duality, text: &[&str]) -> Vec<GFVector> {
    text.iter().map(|r| GFVector::parse(r, d.spec()).unwrap()).collect()
}

fn code(d: &Duality, text: &[&str]) -> AdditiveCode {
    let r = rows(d, text);
    AdditiveCode::new(d.spec(), r[0].len(), &r).unwrap()
}

fn word_set(c: &AdditiveCode) -> HashSet<GFVector> {
    c.codewords(DEFAULT_CODEWORD_BOUND).unwrap().collect()
}

fn vectors(d: &Duality, text: &[&str]) -> HashSet<GFVector> {
    rows(d, text).into_iter().collect()
}

fn mat(p: u64, r: &[&[i64]]) -> FpMatrix {
    FpMatrix::from_rows(Prime::new(p).unwrap(), r).unwrap()
}

/// Brute-force hull test straight from the character definition: is there a
/// nonzero codeword `x` with `chi_x(g) = 1` for every generator `g`?
fn hull_is_trivial(c: &AdditiveCode, d: &Duality) -> bool {
    let gens = c.generator_rows();
    c.codewords(DEFAULT_CODEWORD_BOUND)
        .unwrap()
        .filter(|x| x.weight() > 0)
        .all(|x| gens.iter().any(|g| d.vector_exponent(&x, g).unwrap() != 0))
}

/// Every `k`-dimensional subspace of `F_p^w` as an RREF matrix, built from
/// pivot sets and free entries.
fn all_subspaces(p: Prime, w: usize, k: usize) -> Vec<FpMatrix> {
    if k == 0 {
        return vec![FpMatrix::zeros(p, 0, w)];
    }
    let mut out = Vec::new();
    let pv = p.get() as usize;
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pivots = pivots.clone();
                ((pivots[r] + 1)..w).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
            })
            .collect();
        for mut idx in 0..pv.pow(free.len() as u32) {
            let mut data = vec![vec![0i64; w]; k];
            for (r, &c) in pivots.iter().enumerate() {
                data[r][c] = 1;
            }
            for &(r, c) in &free {
                data[r][c] = (idx % pv) as i64;
                idx /= pv;
            }
            out.push(FpMatrix::from_rows(p, &data).unwrap());
        }
        // next pivot combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] < w - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn criterion_1() -> Check {
    let f9 = FieldSpec::new(3, 2).unwrap();
    let all: Vec<Duality> = enumerate_dualities(f9, ClassFilter::All, 1000).unwrap().collect();
    let count = |c: DualityClass| all.iter().filter(|d| d.class() == c).count();
    let (sym, skew, other) =
        (count(DualityClass::Symmetric), count(DualityClass::SkewSymmetric), count(DualityClass::OtherNonSymmetric));
    ensure!((all.len(), sym, skew, other) == (48, 18, 2, 28), "F_9 counts {} / {sym} / {skew} / {other}", all.len());
    let skews: Vec<&Duality> = all.iter().filter(|d| d.class() == DualityClass::SkewSymmetric).collect();
    ensure!(skews.contains(&&named("M1")) && skews.contains(&&named("M2")), "M1 and M2 must be the skew dualities");

    for (p, e) in [(2, 2), (3, 2), (2, 3), (3, 3), (5, 1)] {
        let spec = FieldSpec::new(p, e).unwrap();
        let enumerated = enumerate_dualities(spec, ClassFilter::SymmetricMatrix, 1 << 20).unwrap().count();
        let formula = count_symmetric(spec.prime(), e);
        ensure!(
            formula == enumerated.into(),
            "symmetric count over F_{p}^{e}: formula {formula}, enumerated {enumerated}"
        );
    }
    for (p, e) in [(3, 2), (2, 2)] {
        let spec = FieldSpec::new(p, e).unwrap();
        let enumerated =
            enumerate_dualities(spec, ClassFilter::Class(DualityClass::SkewSymmetric), 1000).unwrap().count();
        let formula = count_skew(spec.prime(), e).unwrap();
        ensure!(formula == enumerated.into(), "skew count over F_{p}^{e}: formula {formula}, enumerated {enumerated}");
    }
    Ok("F_9: 48 = 18 + 2 + 28; symmetric formula on 5 fields, skew formula on 2".into())
}

fn criterion_2() -> Check {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/tables");
    let mut cells = 0;
    for name in ["M1", "M2", "D1", "D2"] {
        let d = named(name);
        let text = std::fs::read_to_string(dir.join(format!("{name}.txt"))).unwrap();
        let printed = CharacterTable::parse(&text, d.spec()).map_err(|e| format!("{name}: {e}"))?;
        let computed = d.character_table(DEFAULT_TABLE_BOUND).unwrap();
        for x in 0..printed.size() {
            for y in 0..printed.size() {
                ensure!(
                    printed.get(x, y) == computed.get(x, y),
                    "{name} cell ({x}, {y}): printed {} computed {}",
                    printed.get(x, y),
                    computed.get(x, y)
                );
                cells += 1;
            }
        }
    }
    ensure!(cells == 81 + 81 + 16 + 16, "compared {cells} cells");
    Ok(format!("{cells} cells match"))
}

fn criterion_3() -> Check {
    let m1 = named("M1");
    let m2 = named("M2");

    let ex1 = ["10 01", "11 00"];
    ensure!(gram_of_rows(&rows(&m1, &ex1), &m1).unwrap() == mat(3, &[&[0, 1], &[2, 0]]), "example 1 Gram");
    let c = code(&m1, &ex1);
    ensure!(check_acd(&c, &m1, true).unwrap().acd, "example 1 must be ACD");
    let c_words = ["00 00", "10 01", "11 00", "21 01", "02 01", "01 02", "12 02", "20 02", "22 00"];
    ensure!(word_set(&c) == vectors(&m1, &c_words), "example 1 codewords");
    let dual_words = ["00 00", "00 01", "00 02", "11 10", "11 11", "11 12", "22 20", "22 21", "22 22"];
    ensure!(word_set(&dual(&c, &m1).unwrap()) == vectors(&m1, &dual_words), "example 1 dual codewords");

    let ex2 = ["10 01", "01 10"];
    ensure!(gram_of_rows(&rows(&m1, &ex2), &m1).unwrap().is_zero(), "example 2 Gram must vanish");
    let c = code(&m1, &ex2);
    ensure!(!check_acd(&c, &m1, true).unwrap().acd, "example 2 must not be ACD");
    ensure!(dual(&c, &m1).unwrap() == c, "example 2 must be self-dual");
    let c_words = ["00 00", "10 01", "01 10", "20 02", "02 20", "11 11", "12 21", "21 12", "22 22"];
    ensure!(word_set(&c) == vectors(&m1, &c_words), "example 2 codewords");

    let acd1 = ["10 01 00", "10 10 01", "00 10 10", "02 01 11"];
    for (d, above) in [(&m1, 2), (&m2, 1)] {
        let below = 3 - above;
        let want: Vec<Vec<i64>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        if i < j {
                            above
                        } else if i > j {
                            below
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        let want = FpMatrix::from_rows(d.spec().prime(), &want).unwrap();
        ensure!(gram_of_rows(&rows(d, &acd1), d).unwrap() == want, "uniform example Gram under {d}");
        ensure!(check_acd(&code(d, &acd1), d, true).unwrap().acd, "uniform example ACD under {d}");
    }

    let acd2 = ["10 01 20 00 00", "01 01 10 00 00", "00 00 00 10 01", "00 00 00 02 01"];
    let printed = [
        (&m1, mat(3, &[&[0, 1, 0, 0], &[2, 0, 0, 0], &[0, 0, 0, 2], &[0, 0, 1, 0]])),
        (&m2, mat(3, &[&[0, 2, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 2, 0]])),
    ];
    for (d, want) in printed {
        ensure!(gram_of_rows(&rows(d, &acd2), d).unwrap() == want, "paired example Gram under {d}");
        ensure!(check_acd(&code(d, &acd2), d, true).unwrap().acd, "paired example ACD under {d}");
    }
    Ok("both worked examples and both template examples reproduce".into())
}

fn criterion_4() -> Check {
    let mut pool = Vec::new();
    for (p, e) in [(2, 2), (3, 2)] {
        pool.extend(enumerate_dualities(FieldSpec::new(p, e).unwrap(), ClassFilter::All, 1000).unwrap());
    }
    ensure!(pool.len() == 6 + 48, "duality pool has {} entries", pool.len());
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let samples = 10_000;
    let (mut acd, mut not_acd) = (0, 0);
    for i in 0..samples {
        let d = &pool[i % pool.len()];
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=d.spec().e() * n);
        let c = AdditiveCode::random(d.spec(), n, k, &mut rng).unwrap();
        let gram = check_acd(&c, d, false).unwrap().acd;
        let oracle = hull_is_trivial(&c, d);
        ensure!(gram == oracle, "disagreement on {c:?} under {d}: Gram {gram}, oracle {oracle}");
        if gram {
            acd += 1;
        } else {
            not_acd += 1;
        }
    }
    ensure!(acd > 0 && not_acd > 0, "sample must contain both verdicts");
    Ok(format!("{samples} codes over 54 dualities agree ({acd} ACD, {not_acd} not)"))
}

fn criterion_5() -> Check {
    let spec4 = FieldSpec::new(2, 2).unwrap();
    let spec9 = FieldSpec::new(3, 2).unwrap();
    let mut all = Vec::new();
    for spec in [spec4, spec9] {
        all.extend(enumerate_dualities(spec, ClassFilter::All, 1000).unwrap());
    }
    let class_a: Vec<Duality> = all.iter().filter(|d| d.is_class_a()).cloned().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut tally: BTreeMap<String, (u32, u32)> = BTreeMap::new();
    for pool in [&all, &class_a] {
        for _ in 0..1000 {
            let d = &pool[rng.gen_range(0..pool.len())];
            let n = rng.gen_range(1..=3);
            let w = d.spec().e() * n;
            let a = AdditiveCode::random(d.spec(), n, rng.gen_range(0..=w), &mut rng).unwrap();
            let b = AdditiveCode::random(d.spec(), n, rng.gen_range(0..=w), &mut rng).unwrap();
            for (id, ok) in check_identities(&a, &b, d).unwrap() {
                let entry = tally.entry(id.to_string()).or_default();
                entry.0 += 1;
                entry.1 += u32::from(!ok);
            }
        }
    }
    let required = [
        Identity::Cardinality,
        Identity::DoubleDual,
        Identity::DualOfSum,
        Identity::DualOfIntersection,
        Identity::AcdTransposeInvariant,
        Identity::DualInheritsAcd,
        Identity::ClassADoubleDual,
    ];
    for id in required {
        let (checked, failed) = tally.get(&id.to_string()).copied().unwrap_or_default();
        ensure!(checked >= 1000, "{id} checked only {checked} times");
        ensure!(failed == 0, "{id} failed {failed} of {checked}");
    }
    ensure!(tally.values().all(|&(_, f)| f == 0), "some identity failed: {tally:?}");
    let least = tally.values().map(|t| t.0).min().unwrap_or(0);
    Ok(format!("{} identities, at least {least} instances each, no failures", tally.len()))
}

fn criterion_6() -> Check {
    let mut visited = 0usize;
    for name in ["M1", "M2"] {
        let d = named(name);
        let p = d.spec().prime();
        for n in 1..=2 {
            let w = 2 * n;
            for k in 0..=w {
                let spaces = all_subspaces(p, w, k);
                ensure!(
                    gaussian_binomial(w, k, p) == spaces.len().into(),
                    "enumerated {} subspaces of dimension {k} in F_3^{w}",
                    spaces.len()
                );
                let acd = spaces
                    .iter()
                    .filter(|g| hull_is_trivial(&AdditiveCode::from_matrix(d.spec(), n, g).unwrap(), &d))
                    .count();
                visited += spaces.len();
                if k % 2 == 1 {
                    ensure!(acd == 0, "{name}: {acd} ACD codes of odd rank {k} at n = {n}");
                    let searched = exhaustive_best(&d, n, k, DEFAULT_BUDGET, 1).unwrap();
                    ensure!(searched.best_distance.is_none(), "{name}: search found an odd-rank ACD code");
                } else {
                    ensure!(acd > 0, "{name}: no ACD code of even rank {k} at n = {n}");
                }
            }
        }
    }
    Ok(format!("{visited} subspaces visited, none of odd rank is ACD"))
}

fn criterion_7() -> Check {
    let (d1, d2) = (named("D1"), named("D2"));
    let mut opts = TableOptions::new(4, TableMode::Exhaustive);
    opts.dualities = Some(vec![d1.clone(), d2.clone()]);
    let report = reproduce_table(TableName::Table2, &opts).unwrap();
    let per_duality = expected_cells(TableName::Table2).iter().filter(|c| c.n <= 4).count();
    ensure!(report.cells.len() == 2 * per_duality, "expected {} cells", 2 * per_duality);
    for cell in &report.cells {
        ensure!(cell.status == CellStatus::Pass, "{cell}");
        ensure!(cell.result.as_ref().unwrap().optimality == Optimality::ExhaustiveProven, "{cell}");
    }
    let (first, second) = report.cells.split_at(per_duality);
    for (a, b) in first.iter().zip(second) {
        let (da, db) = (a.result.as_ref().unwrap().best_distance, b.result.as_ref().unwrap().best_distance);
        ensure!((a.n, a.k) == (b.n, b.k) && da == db, "D1 and D2 differ at n={} k={}", a.n, a.k);
    }

    let mut opts = TableOptions::new(5, TableMode::Mixed);
    opts.n_min = 5;
    opts.trials = 1_000_000;
    opts.seed = 2024;
    let report = reproduce_table(TableName::Table2, &opts).unwrap();
    let mut certified = 0;
    for cell in &report.cells {
        ensure!(cell.status == CellStatus::Pass, "{cell}");
        let r = cell.result.as_ref().unwrap();
        ensure!(verify_witness(r, &d1).unwrap(), "witness for {cell} does not verify");
        let mds = cell.expected == singleton_bound(cell.n, cell.k, 2);
        if cell.k <= 2 || mds {
            ensure!(r.optimality != Optimality::LowerBound, "{cell} should be certified");
            certified += 1;
        }
    }
    Ok(format!(
        "{per_duality} cells for n <= 4 under D1 and D2 agree; n = 5: {} cells reached, {certified} certified",
        report.cells.len()
    ))
}

fn criterion_8() -> Check {
    let report = reproduce_table(TableName::Table1, &TableOptions::new(3, TableMode::Exhaustive)).unwrap();
    ensure!(report.cells.len() == 12, "expected 12 cells, got {}", report.cells.len());
    for cell in &report.cells {
        ensure!(cell.status == CellStatus::Pass, "{cell}");
    }
    for name in ["M1", "M2"] {
        let d = named(name);
        for cell in expected_cells(TableName::Table1).into_iter().filter(|c| c.n == 4) {
            let best = construction_best(&d, cell.n, cell.k).unwrap();
            let best = best.ok_or_else(|| format!("{name}: no construction for [4,{}]", cell.k))?;
            ensure!(
                best.best_distance == Some(cell.distance) && best.optimality == Optimality::SingletonProven,
                "{name} [4,{}]: {best}",
                cell.k
            );
        }
        for (k, distance) in [(4, 3), (6, 2)] {
            let w = search::published_witness(&d, 4, k).unwrap();
            ensure!(check_acd(&w, &d, true).unwrap().acd, "{name}: printed [4,{k}] generator is not ACD");
            ensure!(w.k() == k && w.min_distance(DEFAULT_CODEWORD_BOUND).unwrap() == distance, "{name} [4,{k}]");
        }
    }
    Ok("n <= 3 exhaustive under M1 and M2; n = 4 certified by constructions and Singleton".into())
}

fn check_report(r: &ConstructionReport, d: &Duality, distance: usize) -> Check {
    let v = r.verify(d).map_err(|e| e.to_string())?;
    ensure!(v.exact() && v.acd, "{} under {d}: {v:?}", r.source);
    ensure!(v.distance == Some(distance), "{} under {d}: distance {:?}, want {distance}", r.source, v.distance);
    Ok(String::new())
}

fn criterion_9() -> Check {
    let mut checked = 0;
    for name in ["M1", "M2"] {
        let d = named(name);
        check_report(&construct_length1(&d).unwrap(), &d, 1)?;
        let t1 = rows(&d, &["10 01 00", "10 10 01", "00 10 10", "02 01 11"]);
        let t2 = rows(&d, &["10 01 20 00 00", "01 01 10 00 00", "00 00 00 10 01", "00 00 00 02 01"]);
        for r in [construct_acd1(&d, &t1).unwrap(), construct_acd2(&d, &t2).unwrap()] {
            let v = r.verify(&d).unwrap();
            ensure!(v.passed() && v.acd && v.rank == 4, "{} under {name}: {v:?}", r.source);
        }
        checked += 3;
        for n in 1..=6 {
            for s in 1..=n {
                let r = construct_bound(&d, n, s).unwrap();
                ensure!(r.code.k() == 2 * s, "bound n={n} s={s} has rank {}", r.code.k());
                check_report(&r, &d, n / s)?;
                checked += 1;
            }
            if n >= 2 {
                check_report(&construct_n_2n2(&d, n).unwrap(), &d, 2)?;
                checked += 1;
            }
        }
    }
    for name in ["D1", "D2"] {
        let d = named(name);
        check_report(&construct_length1(&d).unwrap(), &d, 1)?;
        for n in 1..=10 {
            let mut grid = vec![(1, if n % 2 == 1 { n } else { n - 1 }.max(1)), (2, n), (2 * n - 1, 1)];
            if n >= 2 {
                grid.push((2 * n - 2, 2));
            }
            for (k, distance) in grid {
                let r = if k == 2 * n - 2 && k != 2 { construct_n_2n2(&d, n) } else { construct_f4(&d, n, k) };
                let r = r.unwrap();
                ensure!(r.code.k() == k, "{name} n={n} k={k}: rank {}", r.code.k());
                check_report(&r, &d, distance)?;
                checked += 1;
            }
        }
    }
    let a4 = named("A4");
    for n in 1..=10 {
        check_report(&construct_f4(&a4, n, 2).unwrap(), &a4, if n % 2 == 1 { n } else { n - 1 })?;
        checked += 1;
    }
    Ok(format!("{checked} constructions meet their claims exactly"))
}

fn criterion_10() -> Check {
    let mut opts = TableOptions::new(10, TableMode::Mixed);
    opts.n_min = 6;
    opts.trials = DEFAULT_TRIALS;
    opts.seed = 10;
    let report = reproduce_table(TableName::Table2, &opts).unwrap();
    ensure!(report.count(CellStatus::Fail) == 0, "failing cells present");
    ensure!(report.count(CellStatus::Skipped) == 0, "skipped cells present");
    for cell in &report.cells {
        let r = cell.result.as_ref().unwrap();
        let singleton = singleton_bound(cell.n, cell.k, 2);
        let label_ok = match r.optimality {
            Optimality::ExhaustiveProven => r.method == Method::Exhaustive,
            Optimality::SingletonProven => r.best_distance == Some(singleton),
            Optimality::LowerBound => r.method != Method::Exhaustive && r.best_distance < Some(singleton),
        };
        ensure!(label_ok, "mislabelled cell: {cell}");
        if cell.status == CellStatus::Warn {
            ensure!(r.optimality == Optimality::LowerBound, "warning on a proven cell: {cell}");
        }
    }
    let lower = report.cells.iter().filter(|c| c.result.as_ref().unwrap().optimality == Optimality::LowerBound).count();
    Ok(format!(
        "{} cells: {} PASS, {} WARN, 0 FAIL; {lower} labelled LowerBound",
        report.cells.len(),
        report.count(CellStatus::Pass),
        report.count(CellStatus::Warn)
    ))
}

fn run_criterion(id: usize, title: &str, limit: Option<Duration>, f: fn() -> Check) -> bool {
    let start = Instant::now();
    let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let outcome = match (outcome, limit) {
        (Ok(_), Some(l)) if elapsed > l => Err(format!("took longer than {l:?}")),
        (o, _) => o,
    };
    let (status, detail) = match &outcome {
        Ok(d) => ("PASS", d.as_str()),
        Err(e) => ("FAIL", e.as_str()),
    };
    // Written to the raw handle so the line shows up even when output is captured.
    let _ = writeln!(io::stderr(), "{status} criterion {id:>2} {title} ({:.2}s): {detail}", elapsed.as_secs_f64());
    outcome.is_ok()
}

#[test]
fn acceptance_criteria() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria: [Criterion; 10] = [
        ("duality counts", secs(1), criterion_1),
        ("named character tables", secs(1), criterion_2),
        ("worked examples", secs(1), criterion_3),
        ("Gram criterion vs intersection oracle", secs(30), criterion_4),
        ("dual-code identities", secs(30), criterion_5),
        ("no odd-rank ACD codes under M1 and M2", secs(10), criterion_6),
        ("quaternary table, n <= 5", None, criterion_7),
        ("F_9 table, n <= 4", None, criterion_8),
        ("construction grid", secs(60), criterion_9),
        ("quaternary table, n = 6..10 as lower bounds", None, criterion_10),
    ];
    let failed: Vec<usize> = criteria
        .iter()
        .enumerate()
        .filter(|(i, (title, limit, f))| !run_criterion(i + 1, title, *limit, *f))
        .map(|(i, _)| i + 1)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

/// Exhaustive confirmation of the F_9 [4,4] cell: about 7.6e7 candidates.
#[test]
#[ignore = "long-running; run with --ignored"]
fn exhaustive_f9_n4_k4() {
    for name in ["M1", "M2"] {
        let r = exhaustive_best(&named(name), 4, 4, 100_000_000, 1).unwrap();
        println!("{name}: {r} after {} candidates", r.candidates_examined);
        assert_eq!(r.best_distance, Some(3));
    }
}
