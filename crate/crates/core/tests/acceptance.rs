//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Run with `cargo test -p sutarski --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use sutarski::generators::{gen_attractor, gen_mutated, gen_random_monotone, gen_unique_not_super};
use sutarski::io::{parse_instance, serialize_instance, WitnessFile};
use sutarski::lattice::SliceEntry::{Fixed, Free};
use sutarski::solvers::{
    brute_fixed_points, brute_opdc_solutions, brute_sut_audit, kleene_budget, kleene_gfp, kleene_lfp, AuditReport,
};
use sutarski::tarski::is_monotone;
use sutarski::{
    check_ov3, classify, map_back, reduce, restrict, slice_points, verify_sut_solution, LatticeSpec, OpdcSolution,
    SutSolution, TarskiFunction,
};

struct Case {
    label: String,
    f: TarskiFunction,
    audit: AuditReport,
    sols: Vec<OpdcSolution>,
    /// `map_back` of each entry of `sols`, or its error text.
    mapped: Vec<Result<SutSolution, String>>,
}

impl Case {
    fn new(label: String, f: TarskiFunction) -> Case {
        let audit = brute_sut_audit(&f).expect("audit");
        let sols = brute_opdc_solutions(reduce(&f).oracle()).expect("enumerate");
        let mapped = sols
            .iter()
            .map(|s| map_back(&f, s).map_err(|e| e.to_string()))
            .collect();
        Case {
            label,
            f,
            audit,
            sols,
            mapped,
        }
    }
}

fn spec(n: u32, k: usize) -> LatticeSpec {
    LatticeSpec::new(n, k).unwrap()
}

fn corpus() -> Vec<Case> {
    let mut out = Vec::new();
    for k in 1..=3 {
        for n in 1..=3 {
            let sp = spec(n, k);
            for p in sp.points() {
                out.push(Case::new(
                    format!("attractor n={n} k={k} p={p}"),
                    gen_attractor(sp, &p).unwrap(),
                ));
            }
        }
    }
    for (n, k) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
        out.push(Case::new(
            format!("unique-not-super n={n} k={k}"),
            gen_unique_not_super(spec(n, k)).unwrap(),
        ));
    }
    for seed in 0..500 {
        out.push(Case::new(
            format!("random-monotone n=3 k=2 seed={seed}"),
            gen_random_monotone(spec(3, 2), seed),
        ));
    }
    // Mutated instances: half from random monotone tables, half from
    // attractors on the 3x3x3 cube, with 1 to 3 rewritten entries.
    for seed in 0..100u64 {
        let base = gen_random_monotone(spec(3, 2), 10_000 + seed);
        let m = 1 + (seed % 3) as usize;
        out.push(Case::new(
            format!("mutated random-monotone n=3 k=2 seed={seed} m={m}"),
            gen_mutated(&base, seed, m).unwrap(),
        ));
    }
    let cube = spec(3, 3);
    for seed in 0..100u64 {
        let target = cube.point_at(seed as usize % cube.size());
        let base = gen_attractor(cube, &target).unwrap();
        let m = 1 + (seed % 3) as usize;
        out.push(Case::new(
            format!("mutated attractor n=3 k=3 p={target} seed={seed} m={m}"),
            gen_mutated(&base, seed, m).unwrap(),
        ));
    }
    out
}

/// Outcome of one criterion: checked items and failure descriptions.
struct Outcome {
    checked: usize,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn soundness(corpus: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    for c in corpus {
        for (sol, mapped) in c.sols.iter().zip(&c.mapped) {
            match mapped {
                Ok(m) => {
                    let v = verify_sut_solution(&c.f, m);
                    o.check(v.is_valid(), || format!("{}: {sol} -> {m} is {v}", c.label));
                }
                Err(e) => o.check(false, || format!("{}: map_back({sol}) refused: {e}", c.label)),
            }
        }
    }
    o
}

fn type_preservation(corpus: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    for c in corpus {
        for (sol, mapped) in c.sols.iter().zip(&c.mapped) {
            let Ok(m) = mapped else { continue };
            let ok = match sol {
                OpdcSolution::AllZero(_) => matches!(m, SutSolution::FixedPoint(_)),
                OpdcSolution::TwoZeroPoints { .. } | OpdcSolution::AdjacentUpDown { .. } => !m.is_proper(),
                OpdcSolution::BoundaryEscape { .. } => false,
            };
            o.check(ok, || format!("{}: {} mapped to {}", c.label, sol.tag(), m.tag()));
        }
    }
    o
}

fn promise_preservation(corpus: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    for c in corpus.iter().filter(|c| c.audit.violation_free()) {
        let bad: Vec<_> = c.sols.iter().filter(|s| !s.is_proper()).collect();
        o.check(bad.is_empty(), || {
            format!("{}: {} violations, first {}", c.label, bad.len(), bad[0])
        });
    }
    o
}

/// Independent of the enumerator: tries every i-slice, every point in it and
/// every boundary index directly against the OV3 checker.
fn ov3_impossibility(corpus: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    for c in corpus {
        let listed = c.sols.iter().filter(|s| s.tag() == "OV3").count();
        o.check(listed == 0, || format!("{}: enumerator listed {listed} OV3", c.label));
        let sp = *c.f.spec();
        let reduced = reduce(&c.f);
        for s in sp.slices() {
            for x in slice_points(&sp, &s) {
                for i in s.free_dims() {
                    if !s.is_i_slice(i) || (x.get(i) != 1 && x.get(i) != sp.n()) {
                        continue;
                    }
                    let v = check_ov3(reduced.oracle(), &s, &x, i);
                    o.check(!v.is_valid(), || format!("{}: OV3 at {s} {x} i={i}", c.label));
                }
            }
        }
    }
    o
}

fn unique_iff_no_incomparable_pair() -> Outcome {
    let mut o = Outcome::new();
    let shapes: Vec<(u32, usize)> = (1..=4).flat_map(|n| [(n, 1), (n, 2)]).collect();
    for seed in 0..500u64 {
        let (n, k) = shapes[seed as usize % shapes.len()];
        let sp = spec(n, k);
        let f = gen_random_monotone(sp, 20_000 + seed);
        let count = brute_fixed_points(&f).unwrap().count();
        let cls: Vec<_> = sp.points().map(|x| (classify(&f, &x).unwrap(), x)).collect();
        let pair = cls
            .iter()
            .any(|(cx, x)| cx.in_up && cls.iter().any(|(cy, y)| cy.in_down && !x.leq(y)));
        o.check((count == 1) == !pair, || {
            format!(
                "n={n} k={k} seed={}: {count} fixed points, incomparable pair {pair}",
                20_000 + seed
            )
        });
    }
    o
}

fn slice_monotonicity() -> Outcome {
    let mut o = Outcome::new();
    let sp = spec(3, 3);
    for seed in 0..100u64 {
        let f = gen_random_monotone(sp, 30_000 + seed);
        for s in sp.slices() {
            let ok = is_monotone(&restrict(&f, s.clone()).unwrap()).unwrap();
            o.check(ok, || {
                format!("seed={}: restriction to {s} not monotone", 30_000 + seed)
            });
        }
    }
    o
}

fn monotone(corpus: &[Case]) -> impl Iterator<Item = &Case> {
    corpus.iter().filter(|c| c.audit.monotone())
}

fn tarski_bounds(corpus: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    for c in monotone(corpus) {
        let summary = brute_fixed_points(&c.f).unwrap();
        let (Some(l), Some(g)) = (summary.least, summary.greatest) else {
            o.check(false, || {
                format!("{}: monotone but no least/greatest fixed point", c.label)
            });
            continue;
        };
        for x in c.f.spec().points() {
            let cl = classify(&c.f, &x).unwrap();
            if cl.in_down {
                o.check(l.leq(&x), || format!("{}: Down point {x} not above {l}", c.label));
            }
            if cl.in_up {
                o.check(x.leq(&g), || format!("{}: Up point {x} not below {g}", c.label));
            }
        }
    }
    o
}

fn kleene_agreement(corpus: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    for c in monotone(corpus) {
        let summary = brute_fixed_points(&c.f).unwrap();
        let budget = kleene_budget(c.f.spec());
        match (kleene_lfp(&c.f), kleene_gfp(&c.f)) {
            (Ok(l), Ok(g)) => o.check(
                Some(&l.fixed_point) == summary.least.as_ref()
                    && Some(&g.fixed_point) == summary.greatest.as_ref()
                    && l.evaluations <= budget
                    && g.evaluations <= budget,
                || {
                    format!(
                        "{}: kleene ({}, {} evals), ({}, {} evals) vs brute {:?} {:?}, budget {budget}",
                        c.label,
                        l.fixed_point,
                        l.evaluations,
                        g.fixed_point,
                        g.evaluations,
                        summary.least,
                        summary.greatest
                    )
                },
            ),
            (l, g) => o.check(false, || {
                format!("{}: kleene failed: {:?} {:?}", c.label, l.err(), g.err())
            }),
        }
    }
    o
}

fn uns_counterexample() -> Outcome {
    let mut o = Outcome::new();
    let sp = spec(2, 2);
    let f = gen_unique_not_super(sp).unwrap();
    let audit = brute_sut_audit(&f).unwrap();
    o.check(audit.monotone(), || "UNS is not monotone".into());
    o.check(audit.full_lattice_count() == 1, || {
        format!("full lattice has {} fixed points", audit.full_lattice_count())
    });
    let s = sp.slice(vec![Free, Fixed(1)]).unwrap();
    o.check(audit.count_for(&s) == Some(2), || {
        format!("slice {s} has {:?} fixed points", audit.count_for(&s))
    });
    o.check(audit.slice_counts.iter().any(|c| c.fixed_points >= 2), || {
        "no slice with 2 fixed points".into()
    });
    match &audit.uniqueness_violation {
        Some(w @ SutSolution::SliceUniquenessViolation { .. }) => {
            let v = verify_sut_solution(&f, w);
            o.check(v.is_valid(), || format!("UTV2 witness {w} is {v}"));
        }
        other => o.check(false, || format!("expected a UTV2 witness, got {other:?}")),
    }
    o
}

fn round_trip(corpus: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    for c in corpus {
        let text = serialize_instance(&c.f).unwrap();
        let again = serialize_instance(&c.f).unwrap();
        let back = parse_instance(&text).unwrap();
        o.check(
            text == again && back.table() == c.f.table() && serialize_instance(&back).unwrap() == text,
            || format!("{}: instance round trip", c.label),
        );
        let hash = sutarski::io::instance_hash(&c.f).ok();
        let sut = c.mapped.iter().flatten().cloned();
        let audit = [&c.audit.monotonicity_violation, &c.audit.uniqueness_violation]
            .into_iter()
            .flatten()
            .cloned();
        let witnesses = c
            .sols
            .iter()
            .cloned()
            .map(|s| WitnessFile::new(s, hash.clone()))
            .chain(sut.chain(audit).map(|s| WitnessFile::new(s, hash.clone())));
        for w in witnesses {
            let text = w.to_text();
            let back = WitnessFile::parse(&text);
            o.check(
                text == w.to_text() && back.as_ref().ok() == Some(&w) && back.unwrap().to_text() == text,
                || format!("{}: witness round trip {text}", c.label),
            );
        }
    }
    o
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let started = Instant::now();
    let corpus = corpus();
    let mut tags = [0usize; 4];
    for s in corpus.iter().flat_map(|c| &c.sols) {
        tags[["O1", "OV1", "OV2", "OV3"].iter().position(|t| *t == s.tag()).unwrap()] += 1;
    }
    println!(
        "corpus: {} instances, {} monotone, {} violation-free, OPDC solutions O1/OV1/OV2/OV3 = {tags:?} ({:.1?})",
        corpus.len(),
        monotone(&corpus).count(),
        corpus.iter().filter(|c| c.audit.violation_free()).count(),
        started.elapsed()
    );

    let criteria: Vec<Criterion> = vec![
        ("reduction soundness", Box::new(|| soundness(&corpus))),
        ("type preservation", Box::new(|| type_preservation(&corpus))),
        ("promise preservation", Box::new(|| promise_preservation(&corpus))),
        ("boundary escape impossibility", Box::new(|| ov3_impossibility(&corpus))),
        (
            "unique fixed point iff no incomparable Up/Down pair",
            Box::new(unique_iff_no_incomparable_pair),
        ),
        ("slice restrictions stay monotone", Box::new(slice_monotonicity)),
        ("fixed points bound Down and Up", Box::new(|| tarski_bounds(&corpus))),
        (
            "Kleene iteration agrees with brute force",
            Box::new(|| kleene_agreement(&corpus)),
        ),
        (
            "unique but not super-unique counterexample",
            Box::new(uns_counterexample),
        ),
        ("serialization round trip", Box::new(|| round_trip(&corpus))),
    ];

    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let pass = o.failures.is_empty() && o.checked > 0;
        all &= pass;
        println!(
            "criterion {:>2} {:<52} {} ({} checks, {} failures, {:.1?})",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            o.checked,
            o.failures.len(),
            t.elapsed()
        );
        for f in o.failures.iter().take(5) {
            println!("    {f}");
        }
    }
    println!("total {:.1?}", started.elapsed());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
