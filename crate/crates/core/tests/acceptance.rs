//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use rnlu_core::baselines::*;
use rnlu_core::bench::{run_benchmark, BenchConfig, Method};
use rnlu_core::bitseq::{ceil_log2, k_min, random_sequence, BitSource};
use rnlu_core::boolfn::{minimize, FactorOptions, IncompleteFunction, MinimizeOptions, TruthTable};
use rnlu_core::extragen::{primitive_polynomial, Polynomial};
use rnlu_core::{construct_rnlu, BitSequence, ConstructOptions, CostModel, Register};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:.2?}, limit {limit:.0?}")
    })
}

fn forty_bit_table() -> Outcome {
    let t = Instant::now();
    let opts = ConstructOptions {
        generator: Some("lfsr:1+x+x^4".parse().unwrap()),
        g0: Some(1),
        ..Default::default()
    };
    let r = construct_rnlu(&seq(FORTY_BITS), 4, &opts).map_err(|e| e.to_string())?;
    ensure(r.states() == [1, 8, 4, 2, 9, 12, 6, 11, 5, 10], || {
        format!("states {:?}", r.states())
    })?;
    let tables = r.defining_tables();
    for (i, (x, f)) in FORTY_BIT_TABLE.iter().enumerate() {
        let g = u128::from_str_radix(x, 2).unwrap();
        ensure(r.states()[i] as u128 == g, || format!("row {i} input"))?;
        for (j, table) in tables.iter().enumerate() {
            let want = f.as_bytes()[3 - j] == b'1';
            ensure(table.get(g) == Some(want), || {
                format!("row {x} column f{j}")
            })?;
        }
    }
    for t in tables {
        ensure(t.specified_count() == 10, || "extra specified rows".into())?;
    }
    within(t.elapsed(), Duration::from_secs(1))?;
    Ok(format!(
        "10 states, 10x4 table cells match, {:.2?}",
        t.elapsed()
    ))
}

fn fifteen_bit_devices() -> Outcome {
    let want = BitSequence::from_bits(&FIFTEEN_BITS);
    let nlfsr = nlfsr4();
    let out = nlfsr
        .simulate(&nlfsr.initial_state(), 45)
        .map_err(|e| e.to_string())?;
    ensure(out.truncated(15).unwrap() == want, || {
        format!("NLFSR gives {out}")
    })?;
    ensure(
        out.bits()[15..30] == out.bits()[..15] && out.bits()[30..] == out.bits()[..15],
        || "NLFSR output is not 15-periodic".into(),
    )?;
    let rnlu = rnlu4();
    let out = rnlu
        .simulate(&rnlu.initial_state(), 15)
        .map_err(|e| e.to_string())?;
    ensure(out == want, || format!("RNLU gives {out}"))?;
    let cm = CostModel::new(1.0, 0.0).unwrap();
    let f = FactorOptions::default();
    let (a, b) = (rnlu.size(&cm, &f).total, nlfsr.size(&cm, &f).total);
    ensure(a == 3.0 && b == 5.0, || format!("costs {a} vs {b}"))?;
    Ok("sequence, period 15, costs 3 vs 5".into())
}

struct Case {
    seq: BitSequence,
    p: usize,
}

fn corpus() -> Vec<Case> {
    let mut src = BitSource::new(2024);
    let ps = [1, 2, 4, 8, 32];
    (0..500)
        .map(|i| {
            // lengths spread over every scale up to 4096
            let e = 1 + (src.next_u64() % 12) as u32;
            let n = if i % 50 == 0 {
                4096
            } else {
                1 + (src.next_u64() % (1 << e)) as usize
            };
            let p = ps[(src.next_u64() % 5) as usize];
            Case {
                seq: random_sequence(n, src.next_u64()).unwrap(),
                p,
            }
        })
        .collect()
}

fn round_trips(corpus: &[Case]) -> Outcome {
    let t = Instant::now();
    let o = MinimizeOptions::default();
    for (i, c) in corpus.iter().enumerate() {
        let s = &c.seq;
        let fail =
            |what: &str, e: String| format!("case {i} (n={}, p={}) {what}: {e}", s.len(), c.p);
        let r = construct_rnlu(s, c.p, &ConstructOptions::default())
            .map_err(|e| fail("build", e.to_string()))?;
        let got = r
            .reproduce()
            .map_err(|e| fail("presented", e.to_string()))?;
        ensure(&got == s, || fail("presented", "mismatch".into()))?;
        let got = r
            .strip_output_stages()
            .reproduce()
            .map_err(|e| fail("stripped", e.to_string()))?;
        ensure(&got == s, || fail("stripped", "mismatch".into()))?;
        let regs = [
            ("du10", du10_rnlu(s, &o)),
            ("du11", du11_rnlu(s, c.p, &o)),
            ("nlfsr", nlfsr_from_windows(s, max_order_complexity(s), &o)),
            ("lfsr", lfsr_register(s)),
        ];
        for (name, reg) in regs {
            let reg = reg.map_err(|e| fail(name, e.to_string()))?;
            reg.verify(s).map_err(|e| fail(name, e.to_string()))?;
        }
    }
    within(t.elapsed(), Duration::from_secs(120))?;
    Ok(format!(
        "{} cases x 6 devices reproduced, {:.1?}",
        corpus.len(),
        t.elapsed()
    ))
}

fn prior_work() -> Outcome {
    let a = BitSequence::from_bits(&[0, 0, 1, 0, 1, 1, 0, 1]);
    let o = MinimizeOptions::default();
    ensure(du10_states(&a) == [0, 2, 1, 4, 3, 5, 6, 7], || {
        format!("du10 states {:?}", du10_states(&a))
    })?;
    let k10 = du10_rnlu(&a, &o).unwrap().stage_count();
    ensure(k10 == 3, || format!("du10 stages {k10}"))?;
    let st = du11_states(&a, 2).unwrap();
    ensure(st == [0, 2, 3, 1], || format!("du11 states {st:?}"))?;
    let k11 = du11_rnlu(&a, 2, &o).unwrap().stage_count();
    ensure(k11 == 2, || format!("du11 stages {k11}"))?;
    let b = BitSequence::from_bits(&[0, 1, 0, 0, 0, 1, 1, 1, 0, 1]);
    let km = k_min(&b, 2).unwrap();
    ensure(km == 4, || format!("k_min {km}"))?;
    Ok("states and stage counts exact".into())
}

fn complexity_statistics() -> Outcome {
    let t = Instant::now();
    let bm: f64 = (0..100)
        .map(|i| berlekamp_massey(&random_sequence(1000, 5000 + i).unwrap()).length as f64)
        .sum::<f64>()
        / 100.0;
    let moc: f64 = (0..100)
        .map(|i| max_order_complexity(&random_sequence(4096, 9000 + i).unwrap()) as f64)
        .sum::<f64>()
        / 100.0;
    ensure((490.0..=510.0).contains(&bm), || format!("mean L = {bm}"))?;
    ensure((18.0..=30.0).contains(&moc), || {
        format!("mean order = {moc}")
    })?;
    within(t.elapsed(), Duration::from_secs(60))?;
    Ok(format!(
        "mean L = {bm:.2} at n=1000, mean order = {moc:.2} at n=4096, {:.1?}",
        t.elapsed()
    ))
}

fn impulse_edges() -> Outcome {
    for n in [4, 8, 16, 64] {
        let mut b = vec![0u8; n];
        b[n - 1] = 1;
        let s = BitSequence::from_bits(&b);
        let l = berlekamp_massey(&s).length;
        let k = max_order_complexity(&s);
        ensure(l == n && k == n - 1, || format!("n={n}: L={l}, order={k}"))?;
    }
    Ok("L = n and order = n-1 for n in 4, 8, 16, 64".into())
}

fn minimizer() -> Outcome {
    let t = Instant::now();
    let mut src = BitSource::new(77);
    let o = MinimizeOptions::default();
    for i in 0..1000 {
        let r = 1 + (src.next_u64() % 8) as usize;
        let dc = src.next_u64() % 100;
        let rows: Vec<(u128, bool)> = (0..1u128 << r)
            .filter_map(|x| {
                let v = src.next_u64();
                (v % 100 >= dc).then_some((x, v >> 40 & 1 == 1))
            })
            .collect();
        let f = IncompleteFunction::from_rows(r, rows).unwrap();
        let c = minimize(&f, &o).unwrap();
        for (x, v) in f.rows() {
            ensure(c.eval_word(x) == v, || format!("table {i} row {x}"))?;
        }
    }
    for on in 0u32..1 << 16 {
        let tt = TruthTable::from_fn(4, |x| on >> x & 1 == 1).unwrap();
        let c = minimize(&tt.to_incomplete(), &o).unwrap();
        let best = exhaustive_min_cover(4, on);
        ensure(c.cubes().len() == best, || {
            format!(
                "function {on:#06x}: {} cubes, minimum {best}",
                c.cubes().len()
            )
        })?;
    }
    Ok(format!(
        "1000 tables consistent, 65536 functions minimum, {:.1?}",
        t.elapsed()
    ))
}

/// Period of the LFSR of `poly` from state 1, stepped independently of the
/// library: stage `t` takes stage `t + 1`, the top stage the parity of the
/// stages named by the exponents below the degree.
fn orbit_period(poly: &Polynomial) -> u64 {
    let r = poly.degree();
    let mask: u64 = poly
        .exponents()
        .iter()
        .filter(|&&e| e < r)
        .fold(0, |acc, &e| acc | 1 << e);
    let mut s = 1u64;
    let mut period = 0u64;
    loop {
        let fb = (s & mask).count_ones() as u64 & 1;
        s = s >> 1 | fb << (r - 1);
        period += 1;
        if s == 1 || period > 1 << r {
            return period;
        }
    }
}

fn primitivity() -> Outcome {
    let t = Instant::now();
    for r in 2..=20 {
        let poly = primitive_polynomial(r).map_err(|e| e.to_string())?;
        let period = orbit_period(&poly);
        ensure(period == (1 << r) - 1, || {
            format!("{poly}: period {period}")
        })?;
    }
    within(t.elapsed(), Duration::from_secs(120))?;
    Ok(format!(
        "degrees 2..20 have full period, {:.1?}",
        t.elapsed()
    ))
}

fn size_trend() -> Outcome {
    let t = Instant::now();
    let cfg = BenchConfig {
        lengths: vec![1 << 10, 1 << 11, 1 << 12, 1 << 13],
        p: 1,
        trials: 20,
        methods: vec![Method::Presented, Method::Du10],
        ..Default::default()
    };
    let rows = run_benchmark(&cfg).map_err(|e| e.to_string())?;
    let mean = |n: usize, m: Method| {
        rows.iter()
            .find(|r| r.n == n && r.method == m)
            .and_then(|r| r.mean_size)
            .unwrap()
    };
    let mut detail = Vec::new();
    let mut prev_ratio = 0.0;
    for (i, &n) in cfg.lengths.iter().enumerate() {
        let (pr, du) = (mean(n, Method::Presented), mean(n, Method::Du10));
        let ratio = du / pr;
        detail.push(format!("n={n}: {pr:.0} vs {du:.0} ({ratio:.2}x)"));
        ensure(pr < du, || format!("presented {pr} >= du {du} at n={n}"))?;
        ensure(ratio >= prev_ratio, || {
            format!("ratio fell to {ratio:.3} at n={n}")
        })?;
        prev_ratio = ratio;
        if i > 0 {
            let growth = pr / mean(cfg.lengths[i - 1], Method::Presented);
            ensure(growth < 2.0, || format!("growth {growth:.3} at n={n}"))?;
        }
    }
    within(t.elapsed(), Duration::from_secs(900))?;
    Ok(format!("{}; {:.1?}", detail.join(", "), t.elapsed()))
}

fn stage_formulas(corpus: &[Case]) -> Outcome {
    for (i, c) in corpus.iter().enumerate() {
        let r = construct_rnlu(&c.seq, c.p, &ConstructOptions::default()).unwrap();
        let n = c.seq.len();
        let m = n.div_ceil(c.p);
        let k = ceil_log2(m as u128) + c.p;
        ensure(r.stage_count() == k, || {
            format!("case {i}: {} stages, expected {k}", r.stage_count())
        })?;
        let dc = (1u128 << ceil_log2(m as u128)) - m as u128;
        for t in r.defining_tables() {
            ensure(t.dont_care_count() == dc, || {
                format!(
                    "case {i}: {} don't-cares, expected {dc}",
                    t.dont_care_count()
                )
            })?;
        }
    }
    Ok(format!("{} cases exact", corpus.len()))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        (
            "defining table of the forty-bit example",
            Box::new(forty_bit_table),
        ),
        ("fifteen-bit NLFSR and RNLU", Box::new(fifteen_bit_devices)),
        ("round trips", Box::new(|| round_trips(&corpus))),
        ("prior-work assignments", Box::new(prior_work)),
        ("complexity statistics", Box::new(complexity_statistics)),
        ("impulse edge cases", Box::new(impulse_edges)),
        ("minimizer soundness and optimality", Box::new(minimizer)),
        ("primitivity", Box::new(primitivity)),
        ("size trend", Box::new(size_trend)),
        ("stage-count formulas", Box::new(|| stage_formulas(&corpus))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
