//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! The criteria run one after another in a single test so that the timings
//! and the peak-memory reading are not disturbed by other tests.

use std::collections::HashSet;
use std::fs;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rankgray::analysis::{longest_snake_search_with, verify_snake, SearchBudget, SearchOptions};
use rankgray::hypergraph::{Hyperedge, Hypergraph, Pair};
use rankgray::perm::{alternating_order, factorial};
use rankgray::{
    kendall_distance, AlternatingSite, EvenRank, GenSequence, Permutation, SuccessorCover,
};
use rankgray_cli::run;

const LIMIT_GEN_7: Duration = Duration::from_secs(1);
const LIMIT_GEN_9: Duration = Duration::from_secs(10);
const LIMIT_GEN_11: Duration = Duration::from_secs(5 * 60);
const LIMIT_MEMORY_BYTES: u64 = 1 << 30;
const LIMIT_SEARCH_M5: Duration = Duration::from_secs(10 * 60);
const LIMIT_M6: Duration = Duration::from_secs(1);
const LIMIT_HYPERGRAPH: Duration = Duration::from_secs(5);
const LIMIT_LINKAGE: Duration = Duration::from_secs(60);
const LIMIT_PERMCORE: Duration = Duration::from_secs(60);

const M5: usize = 57;
const M6_LENGTH: u64 = 315;
const LINKAGE_APPLICATIONS: usize = 1000;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rankgray(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("rankgray").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&err).into_owned(),
    )
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:.2?}, limit {limit:?}")
    })
}

/// Peak resident set size of this process.
fn peak_rss_bytes() -> Option<u64> {
    let status = fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}

/// Independent Hamiltonicity check: closed, `n!/2` distinct even vertices.
fn hamiltonian_by_hand(c: &GenSequence) -> Result<(), String> {
    let n = c.n();
    let total = alternating_order(n) as usize;
    ensure(c.len() == total, || {
        format!("length {} != {total}", c.len())
    })?;
    ensure(c.is_closed(), || "walk does not close".into())?;
    let mut seen = vec![false; factorial(n) as usize];
    for p in c.walk().take(total) {
        ensure(p.is_even(), || format!("odd vertex [{p}]"))?;
        let r = p.lex_rank() as usize;
        ensure(!seen[r], || format!("vertex [{p}] repeated"))?;
        seen[r] = true;
    }
    Ok(())
}

fn gen_and_check(n: usize, needs: u8, limit: Duration) -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let file = dir.path().join(format!("a{n}.seq"));
    let path = file.to_str().unwrap();
    let n_arg = n.to_string();
    let started = Instant::now();
    let (code, _, err) = rankgray(&["gen", "--n", &n_arg, "--out", path]);
    let elapsed = started.elapsed();
    ensure(code == 0, || format!("gen exited {code}: {err}"))?;
    within(elapsed, limit)?;
    let text = fs::read_to_string(&file).map_err(|e| e.to_string())?;
    let c = GenSequence::parse(&text).map_err(|e| e.to_string())?;
    hamiltonian_by_hand(&c)?;
    ensure(c.gens().contains(&needs), || format!("no tau_{needs} edge"))?;
    let (code, report, _) = rankgray(&["verify", "--in", path]);
    ensure(code == 0, || format!("verify exited {code}"))?;
    ensure(
        report.contains(&format!("length: {}\n", alternating_order(n))),
        || report.clone(),
    )?;
    ensure(report.contains("is_hamiltonian_in_An: true\n"), || {
        report.clone()
    })?;
    Ok(format!("length {}, gen {elapsed:.2?}", c.len()))
}

fn criterion_1() -> Check {
    gen_and_check(7, 5, LIMIT_GEN_7)
}

fn criterion_2() -> Check {
    gen_and_check(9, 7, LIMIT_GEN_9)
}

fn criterion_3() -> Check {
    let summary = gen_and_check(11, 9, LIMIT_GEN_11)?;
    let peak = peak_rss_bytes().ok_or("cannot read VmHWM")?;
    ensure(peak < LIMIT_MEMORY_BYTES, || {
        format!("peak RSS {} MiB", peak >> 20)
    })?;
    Ok(format!("{summary}, peak RSS {} MiB", peak >> 20))
}

fn criterion_4() -> Check {
    let started = Instant::now();
    let (code, out, err) = rankgray(&["search", "--n", "5", "--gens", "3,5"]);
    let elapsed = started.elapsed();
    ensure(code == 0, || format!("search exited {code}: {err}"))?;
    within(elapsed, LIMIT_SEARCH_M5)?;
    ensure(
        out.starts_with(&format!("length: {M5}\nexact: true\n")),
        || out.clone(),
    )?;
    let witness = out.split("witness:\n").nth(1).ok_or("no witness")?;
    let w = GenSequence::parse(witness).map_err(|e| e.to_string())?;
    let report = verify_snake(&w).map_err(|e| e.to_string())?;
    ensure(
        report.is_cycle && report.is_valid() && report.length == M5 as u64,
        || format!("witness replay:\n{report}"),
    )?;
    Ok(format!("M5 = {M5}, exact, {elapsed:.2?}"))
}

fn criterion_5() -> Check {
    for (n, gens) in [("5", "3,5"), ("7", "5,7")] {
        let (code, out, err) = rankgray(&["rankin", "--n", n, "--gens", gens]);
        ensure(code == 0 && out == "excluded\n", || {
            format!("rankin n={n} {gens}: exit {code}, {out:?} {err}")
        })?;
    }
    // Criterion-free confirmation: no snake of length 60 exists.
    let opts = SearchOptions {
        budget: SearchBudget::unlimited(),
        min_length: Some(60),
    };
    let r = longest_snake_search_with(5, &[3, 5], &opts).map_err(|e| e.to_string())?;
    ensure(r.exact && r.length == 0, || {
        format!(
            "search for length 60: length {}, exact {}",
            r.length, r.exact
        )
    })?;
    Ok("both excluded; exhaustive search finds no 60-cycle".into())
}

fn criterion_6() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let file = dir.path().join("m6.seq");
    let path = file.to_str().unwrap();
    let started = Instant::now();
    let (code, _, err) = rankgray(&["m6", "--out", path]);
    ensure(code == 0, || format!("m6 exited {code}: {err}"))?;
    let (code, report, _) = rankgray(&["verify", "--in", path, "--mode", "sn"]);
    let elapsed = started.elapsed();
    ensure(code == 0, || format!("verify exited {code}:\n{report}"))?;
    within(elapsed, LIMIT_M6)?;
    ensure(report.contains(&format!("length: {M6_LENGTH}\n")), || {
        report.clone()
    })?;
    ensure(report.contains("violations: 0\n"), || report.clone())?;
    // Quadratic cross-check of the distance constraint.
    let c = GenSequence::parse(&fs::read_to_string(&file).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let vs: Vec<Permutation> = c.walk().take(c.len()).collect();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let d = kendall_distance(&vs[i], &vs[j]).map_err(|e| e.to_string())?;
            ensure(d > 1, || format!("positions {i}, {j} at distance {d}"))?;
        }
    }
    Ok(format!(
        "length {M6_LENGTH}, zero violations, {elapsed:.2?}"
    ))
}

fn criterion_7() -> Check {
    let started = Instant::now();
    for n in 3..=12usize {
        let all: HashSet<Pair> = (1..=n as u8)
            .flat_map(|a| {
                (1..=n as u8)
                    .filter(move |&b| b != a)
                    .map(move |b| Pair(a, b))
            })
            .collect();
        let h = Hypergraph::build_acyclic(n).map_err(|e| e.to_string())?;
        ensure(h.is_acyclic(), || format!("n={n}: build_acyclic is cyclic"))?;
        ensure(h.components().len() == 2, || format!("n={n}: components"))?;
        ensure(h.edges().len() == (n * n - n - 2) / 2, || {
            format!("n={n}: count")
        })?;
        let closed = Hypergraph::closed_form(n).map_err(|e| e.to_string())?;
        let a: HashSet<&Hyperedge> = h.edges().iter().collect();
        let b: HashSet<&Hyperedge> = closed.edges().iter().collect();
        ensure(a == b, || format!("n={n}: closed form differs"))?;
        if n < 5 {
            continue;
        }
        let m = n as u8;
        let tuple = [m - 4, m - 3, m - 2, m - 1, m];
        let g = Hypergraph::build_connected(n, tuple).map_err(|e| e.to_string())?;
        ensure(g.is_connected() && g.is_acyclic(), || {
            format!("n={n}: connected/acyclic")
        })?;
        ensure(g.edges().len() == (n * n - n - 4) / 2, || {
            format!("n={n}: connected count")
        })?;
        ensure(
            g.edges().iter().filter(|e| e.len() == 6).count() == 1,
            || format!("n={n}: 6-hyperedges"),
        )?;
        let covered: HashSet<Pair> = g.edges().iter().flat_map(|e| e.vertices()).collect();
        ensure(covered == all, || format!("n={n}: vertex cover"))?;
        let order = g.order_hyperedges().map_err(|e| e.to_string())?;
        let mut seen: HashSet<Pair> = HashSet::new();
        for (i, item) in order.iter().enumerate() {
            let shared = item
                .edge
                .vertices()
                .iter()
                .filter(|v| seen.contains(v))
                .count();
            ensure(shared == usize::from(i > 0), || {
                format!("n={n}: hyperedge {i} shares {shared}")
            })?;
            seen.extend(item.edge.vertices());
        }
    }
    let elapsed = started.elapsed();
    within(elapsed, LIMIT_HYPERGRAPH)?;
    Ok(format!("n = 3..12, {elapsed:.2?}"))
}

fn random_even(n: usize, rng: &mut StdRng) -> Permutation {
    Permutation::unrank_even(EvenRank(rng.gen_range(0..alternating_order(n))), n).unwrap()
}

fn criterion_8() -> Check {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(2024);
    let mut applied = 0;
    for n in [5usize, 7] {
        let odd: Vec<usize> = (3..=n).step_by(2).collect();
        let mut cover = SuccessorCover::single_generator(n, n).map_err(|e| e.to_string())?;
        let parity = cover.cycle_count() % 2;
        let mut done = 0;
        while done < LINKAGE_APPLICATIONS {
            let anchor = random_even(n, &mut rng);
            let k = cover.label(&anchor) as usize;
            let l = odd[rng.gen_range(0..odd.len())];
            if l == k {
                continue;
            }
            let site = AlternatingSite::new(anchor, k, l).map_err(|e| e.to_string())?;
            if let Ok(next) = cover.three_fold_link(&site) {
                ensure(next.cycle_count() % 2 == parity, || {
                    format!("n={n}: parity changed at [{anchor}] {k}->{l}")
                })?;
                cover = next;
                done += 1;
            }
        }
        applied += done;
    }

    // Six-fold linkage on covers by tau_3/tau_5 only; the six linked
    // out-vertices then lie in six classes and so on six cycles.
    let n = 7;
    let mut six = 0;
    for round in 0..6 {
        let mut cover =
            SuccessorCover::single_generator(n, if round % 2 == 0 { 5 } else { 3 }).unwrap();
        let mut done = 0;
        while done < 400 {
            let anchor = random_even(n, &mut rng);
            let k = cover.label(&anchor) as usize;
            let l = if k == 3 { 5 } else { 3 };
            let site = AlternatingSite::new(anchor, k, l).unwrap();
            if let Ok(next) = cover.three_fold_link(&site) {
                cover = next;
                done += 1;
            }
        }
        for r in 0..alternating_order(n) {
            let anchor = Permutation::unrank_even(EvenRank(r), n).unwrap();
            if let Ok(linked) = cover.six_fold_link(&anchor) {
                ensure(linked.cycle_count() + 5 == cover.cycle_count(), || {
                    format!(
                        "six-fold at [{anchor}] changed the count by {}",
                        linked.cycle_count() as i64 - cover.cycle_count() as i64
                    )
                })?;
                six += 1;
            }
        }
    }
    ensure(six > 0, || "no six-fold site found".into())?;
    let elapsed = started.elapsed();
    within(elapsed, LIMIT_LINKAGE)?;
    Ok(format!(
        "{applied} three-fold, {six} six-fold, {elapsed:.2?}"
    ))
}

fn all_perms(n: usize) -> Vec<Permutation> {
    (0..factorial(n))
        .map(|r| Permutation::lex_unrank(r, n).unwrap())
        .collect()
}

fn criterion_9() -> Check {
    let started = Instant::now();
    for n in 3..=11usize {
        for k in 2..=n {
            for l in 2..=n {
                if k == l {
                    continue;
                }
                let r = Permutation::ratio(l, k, n).map_err(|e| e.to_string())?;
                let q = (k as i64 - l as i64).unsigned_abs() + 1;
                ensure(r.order() == q, || format!("order of ratio({l},{k},{n})"))?;
            }
        }
    }
    for n in [7usize, 9, 11] {
        let t = |k| Permutation::tau(k, n).unwrap();
        let zeta = [
            t(n),
            t(n - 2).inverse(),
            t(n),
            t(n - 4).inverse(),
            t(n),
            t(n - 4).inverse(),
        ]
        .iter()
        .fold(Permutation::identity(n), |acc, g| acc.compose(g).unwrap());
        ensure(zeta.order() == 2, || format!("zeta order at n={n}"))?;
    }
    for n in 1..=5usize {
        let ps = all_perms(n);
        for a in &ps {
            ensure(kendall_distance(a, a).unwrap() == 0, || {
                "d(a,a) != 0".into()
            })?;
            for b in &ps {
                let ab = kendall_distance(a, b).unwrap();
                ensure(ab == kendall_distance(b, a).unwrap(), || "symmetry".into())?;
                ensure((ab == 0) == (a == b), || {
                    "identity of indiscernibles".into()
                })?;
                for c in &ps {
                    let bc = kendall_distance(b, c).unwrap();
                    let ac = kendall_distance(a, c).unwrap();
                    ensure(ac <= ab + bc, || "triangle inequality".into())?;
                }
            }
        }
    }
    for n in 1..=7usize {
        let mut last = None;
        for r in 0..alternating_order(n) {
            let p = Permutation::unrank_even(EvenRank(r), n).map_err(|e| e.to_string())?;
            ensure(p.is_even(), || "unranked an odd permutation".into())?;
            ensure(p.rank_even().unwrap() == EvenRank(r), || {
                format!("round trip n={n} r={r}")
            })?;
            ensure(last.map_or(true, |q: Permutation| q < p), || {
                "order not lexicographic".into()
            })?;
            last = Some(p);
        }
    }
    let elapsed = started.elapsed();
    within(elapsed, LIMIT_PERMCORE)?;
    Ok(format!("{elapsed:.2?}"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("base case n=7", criterion_1),
        ("induction n=9", criterion_2),
        ("induction n=11", criterion_3),
        ("oracle M5 = 57", criterion_4),
        ("Rankin exclusion", criterion_5),
        ("M6 replay", criterion_6),
        ("hypergraph suite", criterion_7),
        ("linkage parity", criterion_8),
        ("permcore suite", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let id = i + 1;
        match check() {
            Ok(detail) => println!("PASS criterion {id} ({name}): {detail}"),
            Err(why) => {
                println!("FAIL criterion {id} ({name}): {why}");
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
