//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs without the libtest harness so the lines always
//! show up in `cargo test` output.

mod common;

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sumcore::*;

use common::{subcommand_runs, sumcore, without_wall_time};

const C1_INSTANCES: usize = 1000;
const C1_MAX_M: usize = 100_000;
const C1_MAX_N: usize = 64;
const C1_LIMIT: Duration = Duration::from_secs(60);
const C2_RANDOM_WINDOWS: usize = 1000;
const C2_MAX_M: usize = 24;
const C2_LIMIT: Duration = Duration::from_secs(300);
const C4_INSTANCES: usize = 500;
const C4_LIMIT: Duration = Duration::from_secs(60);
const C6_M: usize = 100_000;
const C6_N: usize = 1000;
/// Absolute tolerance on densities, `2/100`.
const C6_TOL: (i64, i64) = (2, 100);
const C7_RANDOM_WINDOWS: usize = 300;
const C8_M: usize = 1 << 16;
const C8_K: usize = 6;
const C8_LIMIT: Duration = Duration::from_secs(10);

type Verdict = (bool, String);
type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 8] = [
        ("C1 regular points", c1_regular_points),
        ("C2 witness oracle", c2_witness_oracle),
        ("C3 powers of two", c3_powers_of_two),
        ("C4 ramsey upgrade", c4_ramsey_upgrade),
        ("C5 stability", c5_stability),
        ("C6 density", c6_density),
        ("C7 syndeticity", c7_syndeticity),
        ("C8 determinism and speed", c8_determinism_and_speed),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let clock = Instant::now();
        let (ok, detail) = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            (false, format!("panicked: {msg}"))
        });
        failed += !ok as usize;
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("{tag} {name} [{:.1}s] {detail}", clock.elapsed().as_secs_f64());
    }
    println!("acceptance: {} of 8 criteria pass", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn window(m: usize, l: usize) -> GroupModel {
    GroupModel::zwindow(m, l).unwrap()
}

fn set(model: &GroupModel, spec: &str) -> DenseSet {
    generate_set(model, &parse_set_spec(spec).unwrap()).unwrap()
}

fn in_a(a: &DenseSet, m: &GroupModel, b: usize, c: usize) -> bool {
    m.op(b, c).is_some_and(|p| a.contains(p))
}

fn count(a: &DenseSet, lo: usize, hi: usize) -> i64 {
    (lo..hi).filter(|&x| a.contains(x)).count() as i64
}

/// Random set whose density changes from block to block, so both outcomes
/// of the regular-point search show up.
fn patchy_set(rng: &mut StdRng, size: usize) -> DenseSet {
    let mut members = Vec::new();
    let mut x = 0;
    while x < size {
        let len = rng.gen_range(1..=size.min(4096));
        let p: f64 = [0.0, 0.05, 0.2, 0.4, 0.6, 0.9, 1.0][rng.gen_range(0..7)];
        members.extend((x..(x + len).min(size)).filter(|_| rng.gen_bool(p)));
        x += len;
    }
    DenseSet::from_members(size, members).unwrap()
}

fn c1_regular_points() -> Verdict {
    let clock = Instant::now();
    let mut rng = StdRng::seed_from_u64(1);
    let alphas = [Rational::new(1, 4), Rational::new(1, 2), Rational::new(3, 4)];
    let (mut good, mut partitions) = (0, 0);
    for inst in 0..C1_INSTANCES {
        let size = rng.gen_range(C1_MAX_N..=C1_MAX_M);
        let a = patchy_set(&mut rng, size);
        let alpha = alphas[inst % 3];
        let n = rng.gen_range(1..=C1_MAX_N);
        let start = rng.gen_range(0..=size - n);
        let end = if rng.gen_bool(0.5) { size } else { rng.gen_range(start + n..=size) };
        let len = (end - start) as i64;
        let dense = Rational::new(count(&a, start, end), len) >= alpha / 2 + Rational::new(n as i64, len);
        let fail =
            |why: &str| (false, format!("instance {inst} (M={size}, [{start},{end}), alpha={alpha}, N={n}): {why}"));
        match find_regular_point(&a, start, end, alpha, n).unwrap() {
            RegularPoint::Good(p) => {
                good += 1;
                let prefixes_ok =
                    (1..=n).all(|k| Rational::from_integer(2 * count(&a, p.x, p.x + k)) >= alpha * k as i64);
                if !(p.x >= start && p.x + n <= end && prefixes_ok && verify_good_point(&p, &a)) {
                    return fail("good point fails a prefix check");
                }
            }
            RegularPoint::Partition(c) => {
                partitions += 1;
                if dense {
                    return fail("dense interval answered with a partition");
                }
                if !verify_density_certificate(&c, &a).unwrap() {
                    return fail("partition rejected by verifier");
                }
                let last = c.counts.len() - 1;
                let blocks_ok = c.cuts.first() == Some(&start)
                    && c.cuts.last() == Some(&end)
                    && c.cuts.windows(2).enumerate().all(|(i, w)| {
                        let (lo, hi) = (w[0], w[1]);
                        let got = count(&a, lo, hi);
                        let sparse = hi - lo <= n && Rational::from_integer(2 * got) < alpha * (hi - lo) as i64;
                        lo < hi && got == c.counts[i] as i64 && (sparse || (i == last && hi - lo < n))
                    });
                let bound_ok = Rational::new(count(&a, start, end), len) < alpha / 2 + Rational::new(n as i64, len);
                if !(blocks_ok && bound_ok) {
                    return fail("partition block or bound check failed");
                }
            }
        }
    }
    let elapsed = clock.elapsed();
    (
        elapsed < C1_LIMIT,
        format!("{C1_INSTANCES} instances: {good} good points, {partitions} partitions, 0 failures, {elapsed:.1?} (limit {C1_LIMIT:?})"),
    )
}

/// Lexicographically least `B`, then least `C`, by enumeration.
fn square_oracle(a: &DenseSet, m: &GroupModel, k: usize) -> Option<SquareWitness> {
    let n = m.operands();
    (0..n).combinations(k).find_map(|b| {
        let common: Vec<usize> = (0..n).filter(|&c| b.iter().all(|&x| in_a(a, m, x, c))).collect();
        (common.len() >= k).then(|| SquareWitness { b, c: common[..k].to_vec() })
    })
}

fn expected(a: &DenseSet, m: &GroupModel, k: usize) -> SquareOutcome {
    square_oracle(a, m, k).map_or(SquareOutcome::NotFound { exhaustive: true }, SquareOutcome::Found)
}

fn c2_witness_oracle() -> Verdict {
    let clock = Instant::now();
    let z8 = GroupModel::cyclic(8).unwrap();
    let mut checked = 0;
    for mask in 0u32..256 {
        let a = DenseSet::from_members(8, (0..8).filter(|i| mask >> i & 1 == 1)).unwrap();
        for k in 1..=3 {
            if find_square_witness(&a, &z8, k, SearchMode::Exact, None).unwrap() != expected(&a, &z8, k) {
                return (false, format!("Z_8 mask {mask:08b}, k={k} disagrees with enumeration"));
            }
            checked += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(2);
    for inst in 0..C2_RANDOM_WINDOWS {
        let size = rng.gen_range(4..=C2_MAX_M);
        let l = rng.gen_range(2..=size / 2);
        let p = rng.gen_range(0.2..0.95);
        let a = DenseSet::from_members(size, (0..size).filter(|_| rng.gen_bool(p))).unwrap();
        let m = window(size, l);
        for k in 1..=3 {
            if find_square_witness(&a, &m, k, SearchMode::Exact, None).unwrap() != expected(&a, &m, k) {
                return (false, format!("window instance {inst} (M={size}, L={l}), k={k} disagrees"));
            }
            checked += 1;
        }
    }
    let elapsed = clock.elapsed();
    (elapsed < C2_LIMIT, format!("{checked} (set, k) pairs agree exactly, {elapsed:.1?} (limit {C2_LIMIT:?})"))
}

fn c3_powers_of_two() -> Verdict {
    let (size, l) = (1 << 16, 1 << 15);
    let m = window(size, l);
    let a = set(&m, "pow2");
    let got = find_square_witness(&a, &m, 2, SearchMode::Exact, None).unwrap();
    // Pairs of pairs: a 2x2 square is a pair {c, c'} shared by two b's.
    let members: Vec<usize> = a.members().collect();
    let mut owners: HashMap<(usize, usize), usize> = HashMap::new();
    for b in 0..l {
        let nbrs: Vec<usize> = members.iter().filter(|&&x| x >= b && x - b < l).map(|&x| x - b).collect();
        for (i, &c) in nbrs.iter().enumerate() {
            for &c2 in &nbrs[i + 1..] {
                *owners.entry((c, c2)).or_default() += 1;
            }
        }
    }
    let oracle_square = owners.values().any(|&n| n >= 2);
    let growth: Vec<bool> = growth_curve(&a, &m, 3, SearchMode::Exact, None).unwrap().iter().map(|r| r.found).collect();
    let ok = got == SquareOutcome::NotFound { exhaustive: true } && !oracle_square && growth == [true, false, false];
    (ok, format!("k=2: {got:?}; oracle pairs with two owners: {oracle_square}; growth found = {growth:?}"))
}

fn c4_ramsey_upgrade() -> Verdict {
    let clock = Instant::now();
    let mut rng = StdRng::seed_from_u64(4);
    let (mut squares, mut ladders, mut uniform) = (0, 0, 0);
    for inst in 0..C4_INSTANCES {
        let m = match inst {
            0 => 4,
            1 => 4096,
            _ => (2f64.powf(rng.gen_range(2.0..=12.0)) as usize).clamp(4, 4096),
        };
        // b_i = i·W and c_j = j with W > m, so every product is a distinct
        // integer i·W + j and the colouring of i > j is free.
        let w = m + 1;
        let (size, l) = (2 * m * w, m * w);
        let colour = match inst % 5 {
            0 => Some(true),
            1 => Some(false),
            _ => None,
        };
        let p = rng.gen_range(0.0..1.0);
        let mut members = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                let inside = i <= j || colour.unwrap_or_else(|| rng.gen_bool(p));
                if inside {
                    members.push(i * w + j);
                }
            }
        }
        let a = DenseSet::from_members(size, members).unwrap();
        let model = window(size, l);
        let tri = TriangularWitness { b: (0..m).map(|i| i * w).collect(), c: (0..m).collect() };
        let up = ramsey_upgrade(&tri, &a, &model).unwrap();
        let (b, c, valid) = match &up.upgraded {
            Upgraded::Square(s) => (&s.b, &s.c, verify_square(s, &a, &model).unwrap()),
            Upgraded::Ladder(d) => (&d.b, &d.c, verify_ladder(d, &a, &model).unwrap()),
        };
        let restricted = up.indices.windows(2).all(|x| x[0] < x[1])
            && up.indices.iter().zip(b).all(|(&i, &x)| tri.b[i] == x)
            && up.indices.iter().zip(c).all(|(&i, &x)| tri.c[i] == x);
        let floor_bound = ((m as f64).log2() / 2.0).floor() as usize;
        let is_square = matches!(up.upgraded, Upgraded::Square(_));
        let tag_ok = colour.is_none_or(|col| col == is_square && up.indices.len() == m);
        uniform += colour.is_some() as usize;
        if is_square {
            squares += 1;
        } else {
            ladders += 1;
        }
        if !(valid && restricted && tag_ok && up.indices.len() >= floor_bound) {
            return (
                false,
                format!(
                    "instance {inst}, m={m}: valid={valid} restricted={restricted} tag_ok={tag_ok} |I|={}",
                    up.indices.len()
                ),
            );
        }
    }
    let elapsed = clock.elapsed();
    (
        elapsed < C4_LIMIT,
        format!("{C4_INSTANCES} witnesses (m in 4..=4096, {uniform} uniformly coloured): {squares} squares, {ladders} ladders, all verify, |I| >= floor(log2 m / 2); {elapsed:.1?} (limit {C4_LIMIT:?})"),
    )
}

/// Brute force: some ordered `b` pair sees both patterns "adjacent to b_1
/// only" and "adjacent to both".
fn has_2_ladder(a: &DenseSet, m: &GroupModel) -> bool {
    let n = m.operands();
    (0..n)
        .permutations(2)
        .any(|bs| (0..2).all(|j| (0..n).any(|c| bs.iter().enumerate().all(|(i, &b)| in_a(a, m, b, c) == (i <= j)))))
}

fn c5_stability() -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;

    for q in [2, 3, 5] {
        let big = window(4096, 2048);
        let a = set(&big, &format!("multiples({q})"));
        let r = max_ladder(&a, &big, 3, None).unwrap();
        let small = window(60, 30);
        let oracle = !has_2_ladder(&set(&small, &format!("multiples({q})")), &small);
        let small_k = max_ladder(&set(&small, &format!("multiples({q})")), &small, 3, None).unwrap().k;
        ok &= r.k == 1 && !r.lower_bound_only && oracle && small_k == 1;
        notes.push(format!("multiples({q}): {} (oracle: no 2-ladder = {oracle})", r.k));
    }

    let mut threshold_ok = true;
    for k in 1..=8usize {
        for size in [8 * k, 8 * k + 6, 1024, 4096] {
            let (l, t) = (size / 2, size / 4);
            let m = window(size, l);
            let a = set(&m, &format!("threshold({t})"));
            // b_i + c_j = t + (j - i), in A iff i <= j.
            let cert =
                LadderCertificate { b: (1..=k).map(|i| k - i).collect(), c: (1..=k).map(|j| t - k + j).collect() };
            let found = max_ladder(&a, &m, k, None).unwrap().k;
            threshold_ok &= verify_ladder(&cert, &a, &m).unwrap() && found >= k;
        }
    }
    ok &= threshold_ok;
    notes.push(format!("threshold ladders >= k for k <= 8, M >= 8k: {threshold_ok}"));

    let (mut unions, mut above_one, mut example) = (0, 0, None);
    for n in 2..=12usize {
        let m = GroupModel::cyclic(n).unwrap();
        for d in (1..=n).filter(|d| n % d == 0) {
            for mask in 1u32..1 << d {
                let a = DenseSet::from_members(n, (0..n).filter(|x| mask >> (x % d) & 1 == 1)).unwrap();
                let r = max_ladder(&a, &m, 4, None).unwrap();
                unions += 1;
                if r.k > 1 {
                    above_one += 1;
                    let cert = r.certificate.unwrap();
                    assert!(verify_ladder(&cert, &a, &m).unwrap());
                    example.get_or_insert(format!(
                        "Z_{n}, A = {:?}, ladder b={:?} c={:?}",
                        a.members().collect::<Vec<_>>(),
                        cert.b,
                        cert.c
                    ));
                }
            }
        }
    }
    ok &= above_one == 0;
    notes.push(format!(
        "coset unions with ladder <= 1: {} of {unions}{}",
        unions - above_one,
        example.map(|e| format!("; counterexample {e}")).unwrap_or_default()
    ));
    (ok, notes.join("; "))
}

fn c6_density() -> Verdict {
    let mut ok = true;
    let half = Rational::new(1, 2);
    let mut evens_ok = true;
    for size in [100usize, 1000, 10_000] {
        let m = window(size, size / 2);
        let a = set(&m, "multiples(2)");
        for n in (2..=size).step_by(2).filter(|n| n % 98 == 2 || n.is_power_of_two() || *n == size) {
            evens_ok &= banach_density(&a, &m, n).unwrap().density == half
                && lower_banach_density(&a, &m, n).unwrap().density == half;
        }
    }
    ok &= evens_ok;
    let mut notes = vec![format!("evens exactly 1/2 at every tested even n: {evens_ok}")];

    let m = window(C6_M, C6_M / 2);
    let tol = Rational::new(C6_TOL.0, C6_TOL.1);
    for (p, q) in [(1, 10), (3, 10), (1, 2)] {
        let delta = Rational::new(p, q);
        for seed in [1u64, 7] {
            let a = generate_set(&m, &SetSpec::Bernoulli { density: delta, seed }).unwrap();
            let rep = banach_density(&a, &m, C6_N).unwrap();
            let direct = (0..=C6_M - C6_N).map(|s| a.bits().count_range(s, s + C6_N)).max().unwrap();
            let matches_count = rep.count == direct && rep.density == Rational::new(direct as i64, C6_N as i64);
            let within = rep.density <= delta + tol && rep.density >= delta - tol;
            ok &= matches_count && within;
            notes.push(format!(
                "bernoulli({delta},{seed}): upper density {} (direct count agrees: {matches_count}), |A|/M = {}, within +-{tol}: {within}",
                rep.density,
                Rational::new(a.len() as i64, C6_M as i64),
            ));
        }
    }
    (ok, notes.join("; "))
}

fn cover_oracle(a: &DenseSet, core: (usize, usize), shifts: (i64, i64)) -> Option<usize> {
    let covers = |g: i64, x: usize| {
        let y = x as i64 - g;
        y >= 0 && (y as usize) < a.universe() && a.contains(y as usize)
    };
    let all: Vec<i64> = (shifts.0..shifts.1).collect();
    (1..=all.len()).find(|&t| {
        all.iter().copied().combinations(t).any(|gs| (core.0..core.1).all(|x| gs.iter().any(|&g| covers(g, x))))
    })
}

fn size_of(out: &CoverOutcome) -> Option<usize> {
    match out {
        CoverOutcome::Cover(c) => Some(c.size()),
        CoverOutcome::Infeasible { .. } => None,
    }
}

fn c7_syndeticity() -> Verdict {
    let exact = |t_max| CoverRequest { core: None, shifts: None, t_max, mode: CoverMode::Exact, budget: None };
    let mut subgroups = 0;
    for n in 1..=12usize {
        let m = GroupModel::cyclic(n).unwrap();
        for d in (1..=n).filter(|d| n % d == 0) {
            let a = DenseSet::from_members(n, (0..n).step_by(d)).unwrap();
            let CoverOutcome::Cover(c) = min_translate_cover(&a, &m, &exact(n)).unwrap() else {
                return (false, format!("Z_{n}, index {d}: no cover"));
            };
            let greedy = min_translate_cover(&a, &m, &CoverRequest { mode: CoverMode::Greedy, ..exact(n) }).unwrap();
            if c.size() != d
                || !c.optimal
                || size_of(&greedy).is_none_or(|g| g < d)
                || !verify_cover(&c, &a, &m).unwrap()
            {
                return (false, format!("Z_{n}, index {d}: exact {} greedy {:?}", c.size(), size_of(&greedy)));
            }
            subgroups += 1;
        }
    }

    let mut rng = StdRng::seed_from_u64(7);
    let (mut covered, mut infeasible) = (0, 0);
    for inst in 0..C7_RANDOM_WINDOWS {
        let size = rng.gen_range(8..=40);
        let m = window(size, size / 2);
        let p = rng.gen_range(0.15..0.8);
        let a = DenseSet::from_members(size, (0..size).filter(|_| rng.gen_bool(p))).unwrap();
        let lo = rng.gen_range(0..size / 2);
        let core = (lo, rng.gen_range(lo + 1..=size));
        let back = rng.gen_range(0..size.min(8)) as i64;
        let shifts = (-back, rng.gen_range(1..=size.min(8)) as i64);
        let req =
            CoverRequest { core: Some(core), shifts: Some(shifts), t_max: 16, mode: CoverMode::Exact, budget: None };
        let ex = min_translate_cover(&a, &m, &req).unwrap();
        let gr = min_translate_cover(&a, &m, &CoverRequest { mode: CoverMode::Greedy, ..req.clone() }).unwrap();
        let want = cover_oracle(&a, core, shifts);
        let bad =
            |why: &str| (false, format!("window instance {inst} (M={size}, core {core:?}, shifts {shifts:?}): {why}"));
        match (&ex, want) {
            (CoverOutcome::Cover(c), Some(t)) => {
                covered += 1;
                if c.size() != t || !verify_cover(c, &a, &m).unwrap() {
                    return bad("exact size differs from enumeration");
                }
                if size_of(&gr).is_none_or(|g| g < t) {
                    return bad("greedy smaller than exact");
                }
            }
            (CoverOutcome::Infeasible { counting_bound, lower_bound, .. }, want) => {
                infeasible += 1;
                if want.is_some_and(|t| t <= 16 || *counting_bound > t || *lower_bound > t) {
                    return bad("infeasible verdict contradicts enumeration");
                }
            }
            (CoverOutcome::Cover(_), None) => return bad("cover reported where none exists"),
        }
        // The counting bound never exceeds the true cover number.
        let counting = match min_translate_cover(&a, &m, &CoverRequest { t_max: 0, ..req.clone() }).unwrap() {
            CoverOutcome::Infeasible { counting_bound, .. } => counting_bound,
            CoverOutcome::Cover(_) => 0,
        };
        if want.is_some_and(|t| counting > t) {
            return bad("counting bound above the cover number");
        }
    }

    let m = window(1000, 500);
    let a = set(&m, "bernoulli(3/10, 11)");
    let req =
        CoverRequest { core: Some((0, 500)), shifts: Some((-20, 1)), t_max: 20, mode: CoverMode::Exact, budget: None };
    let ex = size_of(&min_translate_cover(&a, &m, &req).unwrap());
    let gr = size_of(&min_translate_cover(&a, &m, &CoverRequest { mode: CoverMode::Greedy, ..req }).unwrap());
    let fixture_ok = ex == Some(16) && gr.is_some_and(|g| g >= 16);
    (
        fixture_ok,
        format!("{subgroups} subgroups of Z_n (n <= 12) cover in exactly their index; {covered} random windows match enumeration ({infeasible} infeasible); bernoulli(3/10,11) exact {ex:?} greedy {gr:?}"),
    )
}

fn c8_determinism_and_speed() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let mut kinds = std::collections::BTreeSet::new();
    for args in subcommand_runs(dir.path()) {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (c1, o1) = sumcore(&args, 1);
        let (c8, o8) = sumcore(&args, 8);
        if c1 >= 2 || c1 != c8 || without_wall_time(&o1) != without_wall_time(&o8) {
            return (false, format!("{args:?} differs between 1 and 8 threads"));
        }
        kinds.insert(args[0].to_string());
    }

    let m = window(C8_M, C8_M / 2);
    let mut times = Vec::new();
    let mut ok = kinds.len() == 11;
    for spec in ["multiples(2)", "multiples(3)", "multiples(5)", "threshold(16384)", "bohr(665857/470832, 1/4)"] {
        let a = set(&m, spec);
        let clock = Instant::now();
        let out = find_square_witness(&a, &m, C8_K, SearchMode::Exact, None).unwrap();
        let elapsed = clock.elapsed();
        let SquareOutcome::Found(w) = out else {
            return (false, format!("{spec}: no k={C8_K} witness"));
        };
        ok &= elapsed < C8_LIMIT && verify_square(&w, &a, &m).unwrap();
        times.push(format!("{spec} {elapsed:.2?}"));
    }
    (
        ok,
        format!(
            "{} subcommands byte-identical at 1 and 8 threads; exact k={C8_K}, M=2^16: {} (limit {C8_LIMIT:?} each)",
            kinds.len(),
            times.join(", ")
        ),
    )
}
