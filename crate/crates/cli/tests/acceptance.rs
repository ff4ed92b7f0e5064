//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use mopdom::par_map;
use mopdom::tight::{search_tight, TightOptions};
use mopdom_core::constructor::construct_bounded_2dd;
use mopdom_core::format::{parse_records, write_records};
use mopdom_core::generators::{enumerate_canonical, enumerate_triangulations, RandomMops};
use mopdom_core::solvers::{exact_2dd, exact_gamma, is_2dd_set};
use mopdom_core::{bound, Mop};
use statrs::distribution::{ChiSquared, ContinuousCDF};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn all(range: std::ops::RangeInclusive<usize>) -> Vec<Mop> {
    range.flat_map(enumerate_triangulations).collect()
}

/// Degree-2 count read straight off the diagonal list.
fn k_oracle(m: &Mop) -> usize {
    let mut deg = vec![2usize; m.n()];
    for &(a, b) in m.diagonals() {
        deg[a] += 1;
        deg[b] += 1;
    }
    deg.iter().filter(|&&d| d == 2).count()
}

/// Triangles all of whose sides are diagonals.
fn internal_oracle(m: &Mop) -> usize {
    let d: BTreeSet<(usize, usize)> = m.diagonals().iter().copied().collect();
    let n = m.n();
    let mut c = 0;
    for a in 0..n {
        for b in a + 1..n {
            if !d.contains(&(a, b)) {
                continue;
            }
            c += (b + 1..n).filter(|&x| d.contains(&(a, x)) && d.contains(&(b, x))).count();
        }
    }
    c
}

fn catalan_oracle(k: usize) -> u64 {
    let mut c = vec![1u64; k + 1];
    for i in 1..=k {
        c[i] = (0..i).map(|j| c[j] * c[i - 1 - j]).sum();
    }
    c[k]
}

fn failures<T>(items: &[T], what: &str, bad: impl Fn(&T) -> bool + Sync + Send) -> Outcome
where
    T: Sync,
{
    let flags = par_map(items, 0, |x| bad(x));
    let count = flags.iter().filter(|&&b| b).count();
    if count == 0 {
        Ok(format!("{} {what}, 0 exceptions", items.len()))
    } else {
        Err(format!("{count} of {} {what} failed", items.len()))
    }
}

fn bound_validity() -> Outcome {
    let mops = all(7..=12);
    if mops.len() != 23_691 {
        return Err(format!("expected 23691 instances, got {}", mops.len()));
    }
    failures(&mops, "instances", |m| exact_2dd(m).unwrap().size > bound(m.n(), k_oracle(m)))
}

fn constructor_validity() -> Outcome {
    let mut mops = all(7..=12);
    mops.extend(enumerate_canonical(13));
    let res = par_map(&mops, 0, |m| {
        let t = construct_bounded_2dd(m).unwrap();
        let logged = !t.used_fallback || t.anomalies.iter().any(|a| a.message.starts_with("fallback"));
        (is_2dd_set(m, &t.final_set) && t.within_bound() && logged, t.used_fallback)
    });
    let bad = res.iter().filter(|r| !r.0).count();
    let fallbacks = res.iter().filter(|r| r.1).count();
    let rate = fallbacks as f64 / mops.len() as f64;
    let detail = format!("{} instances, {bad} bad, fallback rate {:.3}%", mops.len(), 100.0 * rate);
    if bad == 0 && rate <= 0.05 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn constructor_at_scale() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for n in [20, 50, 100] {
        let mut gen = RandomMops::new(n, 0xACCE55 + n as u64);
        let mops: Vec<Mop> = (0..1000).map(|_| gen.sample()).collect();
        let res = par_map(&mops, 0, |m| {
            let t = construct_bounded_2dd(m).unwrap();
            (is_2dd_set(m, &t.final_set), t.final_set.len(), t.bound, t.used_fallback)
        });
        let unverified = res.iter().filter(|r| !r.0).count();
        if unverified > 0 {
            return Err(format!("n={n}: {unverified} unverified sets"));
        }
        if n == 20 {
            let sub: Vec<usize> = (0..100).map(|i| i * 10).collect();
            let bad = par_map(&sub, 0, |&i| {
                let g = exact_2dd(&mops[i]).unwrap().size;
                !(g <= res[i].1 && res[i].1 <= res[i].2)
            });
            if bad.iter().any(|&b| b) {
                return Err("n=20 exact cross-check failed".into());
            }
        }
        let fb = res.iter().filter(|r| r.3).count();
        notes.push(format!("n={n} fallbacks {fb}"));
    }
    let secs = start.elapsed().as_secs_f64();
    let detail = format!("3000 verified ({}), {secs:.1}s", notes.join(", "));
    if secs < 120.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn degree_two_identity() -> Outcome {
    failures(&all(4..=12), "instances", |m| {
        m.degree_two_count() != k_oracle(m)
            || m.internal_triangle_count() != internal_oracle(m)
            || k_oracle(m) != internal_oracle(m) + 2
    })
}

fn contraction_closure() -> Outcome {
    let pairs: Vec<(Mop, usize)> =
        all(4..=10).into_iter().flat_map(|m| (0..m.n()).map(move |i| (m.clone(), i))).collect();
    failures(&pairs, "contractions", |(m, i)| {
        let n = m.n();
        match m.contract_outer_edge((*i, (i + 1) % n)) {
            Ok(c) => c.mop.n() != n - 1 || !c.mop.validate().is_valid(),
            Err(_) => true,
        }
    })
}

fn spaced_pairs() -> Outcome {
    failures(&all(5..=8), "mops", |m| {
        let n = m.n();
        (0..n).any(|i| !is_2dd_set(m, &[i, (i + 4) % n]))
    })
}

fn pentagon_hub() -> Outcome {
    let mops = all(5..=5);
    if mops.len() != 5 {
        return Err(format!("expected 5 pentagon triangulations, got {}", mops.len()));
    }
    failures(&mops, "pentagon triangulations", |m| !(0..5).any(|v| m.neighbors(v).len() == 4))
}

fn partition_diagonals() -> Outcome {
    failures(&all(6..=12), "mops", |m| match m.find_partition_diagonal() {
        Ok(p) => !(4..=6).contains(&p.side_outer_edges) || !m.has_edge(p.diagonal.0, p.diagonal.1),
        Err(_) => true,
    })
}

fn comparison_chain() -> Outcome {
    failures(&all(7..=12), "mops", |m| {
        let (n, k) = (m.n(), k_oracle(m));
        let d = exact_2dd(m).unwrap().size;
        let g = exact_gamma(m).unwrap().size;
        !(d <= g && g <= (n + k) / 4 && g <= n / 3)
    })
}

fn sharpness() -> Outcome {
    let opts = TightOptions { from: 7, to: 13, extend_to: 16, samples: None, seed: 0, jobs: 0 };
    let report = search_tight(&opts).map_err(|e| e.to_string())?;
    let witnesses: Vec<Mop> = report.rows.iter().flat_map(|r| r.witnesses.iter().cloned()).collect();
    if witnesses.is_empty() {
        return Err(format!("no witness up to n = {}", report.rows.last().map_or(0, |r| r.n)));
    }
    let text = write_records(&witnesses);
    let back = parse_records(&text).map_err(|e| e.to_string())?;
    let bad = par_map(&back, 0, |r| exact_2dd(&r.mop).unwrap().size != bound(r.mop.n(), k_oracle(&r.mop)));
    let bad = bad.iter().filter(|&&b| b).count();
    let orders: Vec<String> = report.rows.iter().filter(|r| !r.witnesses.is_empty()).map(|r| r.n.to_string()).collect();
    let detail = format!("{} witnesses at n = {}, {bad} failed re-verification", witnesses.len(), orders.join(","));
    if bad == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn generator_soundness() -> Outcome {
    for n in 3..=12 {
        let count = enumerate_triangulations(n).count() as u64;
        if count != catalan_oracle(n - 2) {
            return Err(format!("n={n}: {count} triangulations, expected {}", catalan_oracle(n - 2)));
        }
    }
    let samples = 100_000usize;
    let mut gen = RandomMops::new(5, 2024);
    let mut counts: HashMap<Vec<(usize, usize)>, usize> = HashMap::new();
    for _ in 0..samples {
        *counts.entry(gen.sample().diagonals().to_vec()).or_default() += 1;
    }
    if counts.len() != 5 {
        return Err(format!("sampler hit {} of 5 triangulations", counts.len()));
    }
    let expected = samples as f64 / 5.0;
    let sigma = (samples as f64 * 0.2 * 0.8).sqrt();
    let chi2: f64 = counts.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let p = 1.0 - ChiSquared::new(4.0).unwrap().cdf(chi2);
    let cells_ok = counts.values().all(|&c| (c as f64 - expected).abs() <= 3.0 * sigma);
    // two-sided 3 sigma corresponds to p = 0.0027
    let detail = format!("Catalan counts n=3..12 match; chi2 = {chi2:.2}, p = {p:.3}");
    if p > 0.0027 && cells_ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("bound validity, exact, n=7..12", bound_validity),
        ("constructor validity, n=7..12 + canonical 13", constructor_validity),
        ("constructor at scale, n=20,50,100", constructor_at_scale),
        ("k = internal triangles + 2, n=4..12", degree_two_identity),
        ("outer-edge contraction gives a mop, n=4..10", contraction_closure),
        ("{v_i, v_i+4} is a 2DD-set, n=5..8", spaced_pairs),
        ("pentagon triangulations have a degree-4 vertex", pentagon_hub),
        ("partition diagonal exists, n=6..12", partition_diagonals),
        ("comparison chain, n=7..12", comparison_chain),
        ("equality witnesses exist", sharpness),
        ("generator counts and uniformity", generator_soundness),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("criterion {:>2} PASS  {name}: {d} [{secs:.1}s]", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {d} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
