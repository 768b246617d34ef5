//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the summary is always printed:
//! `cargo test -p ratliff-rush --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use ratliff_rush::criteria::{h_is_one, Microinvariants, PullbackData};
use ratliff_rush::family::FamilyMember;
use ratliff_rush::filtration::{
    conductor_index_l, h_number, power_reduction_bound_check, reduction_number, rr_closure,
    suff_condition, Powers, RRReport,
};
use ratliff_rush::oracle::{
    cross_check_arith, cross_check_closures, random_instances, Instance, InstanceBounds,
};
use ratliff_rush::report::closure_gap;
use ratliff_rush::{NumericalSemigroup, RelativeIdeal};

const SEED: u64 = 42;
const COUNT: usize = 500;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ideal(ambient: &[i64], gens: &[i64]) -> RelativeIdeal {
    RelativeIdeal::new(NumericalSemigroup::new(ambient).unwrap(), gens).unwrap()
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    if took > limit {
        Err(format!("took {took:?}, limit {limit:?}"))
    } else {
        Ok(took)
    }
}

fn corpus() -> Vec<Instance> {
    random_instances(&InstanceBounds::default(), SEED, COUNT).unwrap()
}

fn regression() -> Vec<RelativeIdeal> {
    let mut out = vec![
        ideal(&[6, 9, 11], &[9, 11]),
        ideal(&[4, 5, 11], &[4, 5, 11]),
        ideal(&[4, 5, 6], &[9, 11]),
        ideal(&[4, 5, 7], &[7, 8]),
        ideal(&[1], &[2]),
        ideal(&[2, 3], &[2, 3]),
    ];
    for n in 3..=8 {
        out.push(FamilyMember::new(n).unwrap().ideal().unwrap());
    }
    out
}

/// Runs `check` on every item in parallel and reports the first failures.
fn all_ok<T: Sync>(
    items: &[T],
    check: impl Fn(&T) -> Vec<String> + Sync + Send,
) -> Result<(), String> {
    let failures: Vec<String> = items.par_iter().flat_map(check).collect();
    if failures.is_empty() {
        Ok(())
    } else {
        let shown: Vec<_> = failures.iter().take(5).cloned().collect();
        Err(format!(
            "{} violations, e.g. {}",
            failures.len(),
            shown.join(" | ")
        ))
    }
}

fn example_one() -> Outcome {
    let start = Instant::now();
    let e = ideal(&[6, 9, 11], &[9, 11]);
    ensure!(
        e.sporadic() == [9, 11, 15, 17, 18, 20, 21, 22, 23, 24] && e.tail() == 26,
        "E = {}",
        e.to_set_string(true)
    );
    let pb = PullbackData::new(&e).map_err(|x| x.to_string())?;
    ensure!(pb.t.gens() == [9, 11, 15, 17, 21, 23], "T = {}", pb.t);
    let f = &pb.f;
    ensure!(
        f.sporadic() == [9, 15, 18, 20, 21, 24, 26, 27, 29, 30, 31, 32, 33] && f.tail() == 35,
        "F = {}",
        f.to_set_string(true)
    );
    let bf = f.blowup().map_err(|x| x.to_string())?;
    ensure!(
        bf.sporadic() == [0, 2, 4, 6] && bf.tail() == 8,
        "B(F) = {}",
        bf.to_set_string(true)
    );
    ensure!(pb.modulus() == 9, "modulus {}", pb.modulus());
    ensure!(
        pb.micro.apery.entries() == [9, 37, 20, 21, 31, 32, 15, 43, 26],
        "Ap(F) = {:?}",
        pb.micro.apery.entries()
    );
    ensure!(
        pb.micro.apery_blowup.entries() == [0, 10, 2, 12, 4, 14, 6, 16, 8],
        "Ap(B(F)) = {:?}",
        pb.micro.apery_blowup.entries()
    );
    ensure!(
        pb.micro.a == [1, 3, 2, 1, 3, 2, 1, 3, 2],
        "a = {:?}",
        pb.micro.a
    );
    ensure!(pb.micro.a == pb.micro.b, "a != b: {:?}", pb.micro.b);
    let powers = Powers::new(&e).map_err(|x| x.to_string())?;
    ensure!(
        powers.power(3).unwrap() == powers.power(2).unwrap().shift(9).unwrap(),
        "3E != 9+2E"
    );
    let r = powers.reduction_number();
    let h = h_number(&e).unwrap();
    ensure!(
        r == 2 && h == 1 && pb.verdict,
        "r={r} h={h} verdict={}",
        pb.verdict
    );
    let took = within(start, Duration::from_secs(1))?;
    Ok(format!("r=2 h=1 a=b, {took:.2?}"))
}

fn h_equals_r() -> Outcome {
    let start = Instant::now();
    let e = ideal(&[4, 5, 11], &[4, 5, 11]);
    let powers = Powers::new(&e).unwrap();
    let two = powers.power(2).unwrap();
    let three = powers.power(3).unwrap();
    ensure!(two.gens() == [8, 9, 10], "2E gens {:?}", two.gens());
    ensure!(
        three.gens() == [12, 13, 14, 15],
        "3E gens {:?}",
        three.gens()
    );
    ensure!(
        powers.reduction_number() == 3,
        "r = {}",
        powers.reduction_number()
    );
    let tilde2 = rr_closure(&e, 2).unwrap();
    let via_shift = three.shift(-4).unwrap().intersect_ambient().unwrap();
    ensure!(
        tilde2 == via_shift,
        "closure of 2E = {}",
        tilde2.to_set_string(true)
    );
    ensure!(
        tilde2.contains(11) && !two.contains(11),
        "11 not gained by the closure"
    );
    let rep = RRReport::compute(&e).unwrap();
    ensure!(
        rep.closed_flags().starts_with("10"),
        "closed flags {}",
        rep.closed_flags()
    );
    ensure!(
        rep.h == 3 && rep.l == 2 && rep.prop1_applies,
        "h={} l={} prop1={}",
        rep.h,
        rep.l,
        rep.prop1_applies
    );
    let took = within(start, Duration::from_secs(1))?;
    Ok(format!("r=3 h=3 l=2, {took:.2?}"))
}

fn closure_gap_example() -> Outcome {
    let e = ideal(&[4, 5, 6], &[9, 11]);
    ensure!(
        e.sporadic() == [9, 11] && e.tail() == 13,
        "E = {}",
        e.to_set_string(true)
    );
    let two = e.scale(2).unwrap();
    ensure!(two == e.shift(9).unwrap(), "2E != 9+E");
    let r = reduction_number(&e).unwrap();
    let h = h_number(&e).unwrap();
    ensure!(r == 1 && h == 1, "r={r} h={h}");
    let c = RelativeIdeal::conductor_ideal(Arc::clone(e.ambient_arc()));
    ensure!(e.is_subset(&c).unwrap(), "E not inside the conductor");
    let gap = closure_gap(&e).unwrap();
    ensure!(gap == [10, 12], "gap {gap:?}");
    Ok("gap {10,12}".into())
}

fn family() -> Outcome {
    let start = Instant::now();
    for n in 3..=8 {
        let f = FamilyMember::new(n).unwrap();
        let e = f.ideal().unwrap();
        let r = reduction_number(&e).unwrap();
        let h = h_number(&e).unwrap();
        let direct = h_is_one(&e).unwrap();
        ensure!(r as i64 == n - 1, "n={n}: r={r}");
        ensure!(h == 1 && direct, "n={n}: h={h} h_is_one={direct}");
        ensure!(f.relations_hold(), "n={n}: generator relation fails");
        let pb = PullbackData::new(&e).unwrap();
        ensure!(
            pb.t.gens() == f.pullback_gens().as_slice(),
            "n={n}: T = {}",
            pb.t
        );
        ensure!(
            pb.f.gens() == [f.a, f.a + f.d],
            "n={n}: F gens {:?}",
            pb.f.gens()
        );
        ensure!(f.hb_minus_a_outside(&pb.t), "n={n}: some hb-a in T");
        let expected_b = NumericalSemigroup::new(&f.blowup_gens()).unwrap();
        ensure!(
            pb.t.blowup().gens() == expected_b.gens(),
            "n={n}: B(T) = {}",
            pb.t.blowup()
        );
        let mut listed = f.pullback_apery_listing();
        let mut table = pb.t.apery(f.a).unwrap().entries().to_vec();
        listed.sort_unstable();
        table.sort_unstable();
        ensure!(listed == table, "n={n}: Ap(T) {table:?}");
    }
    let took = within(start, Duration::from_secs(30))?;
    Ok(format!("n=3..8, {took:.2?}"))
}

fn sufficient_condition() -> Outcome {
    let e = ideal(&[4, 5, 7], &[7, 8]);
    ensure!(
        e.sporadic() == [7, 8] && e.tail() == 11,
        "E = {}",
        e.to_set_string(true)
    );
    let r = reduction_number(&e).unwrap();
    let h = h_number(&e).unwrap();
    ensure!(suff_condition(&e).unwrap(), "suff fails");
    ensure!(h == r, "h={h} r={r}");
    Ok(format!("suff holds, computed r = h = {r}"))
}

fn three_way_closures(corpus: &[Instance]) -> Outcome {
    let start = Instant::now();
    all_ok(corpus, |inst| match inst.build() {
        Ok(e) => cross_check_closures(&e).unwrap_or_else(|x| vec![format!("{e}: {x}")]),
        Err(x) => vec![format!("{inst:?}: {x}")],
    })?;
    let took = within(start, Duration::from_secs(300))?;
    Ok(format!("{} instances, {took:.2?}", corpus.len()))
}

fn theorem_comp(corpus: &[Instance]) -> Outcome {
    let mut ideals: Vec<RelativeIdeal> = corpus.iter().map(|i| i.build().unwrap()).collect();
    ideals.extend(regression());
    all_ok(&ideals, |e| {
        let direct = h_is_one(e).unwrap();
        let h = h_number(e).unwrap();
        if direct != (h == 1) {
            vec![format!("{e}: h_is_one={direct} h={h}")]
        } else {
            vec![]
        }
    })?;
    Ok(format!("{} instances", ideals.len()))
}

fn property_suite(corpus: &[Instance]) -> Outcome {
    let ideals: Vec<RelativeIdeal> = corpus.iter().map(|i| i.build().unwrap()).collect();
    all_ok(&ideals, |e| {
        let mut bad = Vec::new();
        let rep = RRReport::compute(e).unwrap();
        let (r, h, l) = (rep.r, rep.h, rep.l);
        if h > r.max(1) {
            bad.push(format!("{e}: h={h} > r={r}"));
        }
        let powers = Powers::new(e).unwrap();
        for m in r.max(1)..=r + 2 {
            if rr_closure(e, m).unwrap() != powers.power(m).unwrap() {
                bad.push(format!("{e}: power {m} >= r not closed"));
            }
        }
        let pb = PullbackData::new(e).unwrap();
        let mi = Microinvariants::of_ideal(e).unwrap();
        for micro in [&pb.micro, &mi] {
            if micro.a.iter().zip(&micro.b).any(|(a, b)| a < b) {
                bad.push(format!("{e}: a_i < b_i"));
            }
        }
        let c = e.ambient().conductor();
        let ceil = ((c + rep.e - 1) / rep.e) as usize;
        if conductor_index_l(e).unwrap() != ceil {
            bad.push(format!("{e}: l={l} but ceil(c/e)={ceil}"));
        }
        for m in [2, 3] {
            let pbnd = power_reduction_bound_check(e, m).unwrap();
            if !pbnd.ok || pbnd.r_of_power > r.div_ceil(m) {
                bad.push(format!(
                    "{e}: r({m}E)={} exceeds ceil(r/{m})",
                    pbnd.r_of_power
                ));
            }
        }
        if rep.suff_applies && h != r {
            bad.push(format!("{e}: suff holds but h={h} r={r}"));
        }
        if l < r {
            if h != r {
                bad.push(format!("{e}: l<r but h={h} r={r}"));
            }
            for m in l.max(1)..r {
                if powers.closure(m).unwrap() == powers.power(m).unwrap() {
                    bad.push(format!("{e}: power {m} closed with l <= m < r"));
                }
            }
        }
        bad.extend(rep.breaches().into_iter().map(|b| format!("{e}: {b}")));
        bad
    })?;
    Ok(format!("{} instances", ideals.len()))
}

fn oracle_windows(corpus: &[Instance]) -> Outcome {
    let bounds = InstanceBounds::default();
    let indexed: Vec<(usize, &Instance)> = corpus.iter().enumerate().collect();
    all_ok(&indexed, |(i, inst)| {
        let e = inst.build().unwrap();
        let partner = inst.partner(&bounds, SEED + *i as u64).unwrap();
        let s = Arc::clone(e.ambient_arc());
        let m = RelativeIdeal::new(Arc::clone(&s), s.gens()).unwrap();
        let mut bad = cross_check_arith(&e, &partner).unwrap_or_else(|x| vec![x.to_string()]);
        bad.extend(cross_check_arith(&e, &m).unwrap_or_else(|x| vec![x.to_string()]));
        bad
    })?;
    Ok(format!("{} instance pairs x2", corpus.len()))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("worked example on <6,9,11>", Box::new(example_one)),
        ("h = r example on <4,5,11>", Box::new(h_equals_r)),
        (
            "integral closure gap on <4,5,6>",
            Box::new(closure_gap_example),
        ),
        ("S_n family n=3..8", Box::new(family)),
        (
            "sufficient condition on <4,5,7>",
            Box::new(sufficient_condition),
        ),
        (
            "three-way closure agreement",
            Box::new(|| three_way_closures(&corpus)),
        ),
        (
            "microinvariant test of h = 1",
            Box::new(|| theorem_comp(&corpus)),
        ),
        ("property suite", Box::new(|| property_suite(&corpus))),
        (
            "ideal arithmetic vs oracle",
            Box::new(|| oracle_windows(&corpus)),
        ),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({detail})", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
