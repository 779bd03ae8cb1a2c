//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Set `ACCEPTANCE_DIM3=1` to extend the exhaustive framed-diagram family to
//! dimension 3 (about a minute and 4 GB of memory).

use std::collections::BTreeMap;
use std::fs;
use std::panic;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::sync::OnceLock;
use std::time::Instant;

use barannikov_core::formal::{all_diagrams, DEFAULT_MAX_STATES};
use barannikov_core::random::*;
use barannikov_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const FIELDS: [FieldSpec; 3] = [FieldSpec::Prime(2), FieldSpec::Prime(5), FieldSpec::Rationals];

// The first even-parity obstructed diagram with standard extremes, in enumeration order.
const OBSTRUCTED: &str = "dim 1
point x1 0 1 up
point x2 0 2 up
point x3 1 3 down
point x4 0 4 up
point x5 1 5 down
point x6 1 6 down
pair x3 x2
pair x5 x4
";

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// 1000 random complexes per field, shared by criteria 1, 3 and 4.
fn suite() -> &'static [FilteredComplex] {
    static SUITE: OnceLock<Vec<FilteredComplex>> = OnceLock::new();
    SUITE.get_or_init(|| {
        let mut r = rng(1);
        let params = ComplexParams {
            max_generators: 12,
            max_degree: 3,
            ..ComplexParams::default()
        };
        FIELDS
            .iter()
            .flat_map(|&f| (0..1000).map(|_| random_complex(&mut r, f, params)).collect::<Vec<_>>())
            .collect()
    })
}

fn is_simple(r: &BarannikovResult) -> bool {
    let images: Vec<String> = r.simple_boundary().into_values().flatten().collect();
    let mut dedup = images.clone();
    dedup.sort();
    dedup.dedup();
    dedup.len() == images.len()
}

fn simplicity_and_conjugacy() -> Check {
    for c in suite() {
        if !c.validate().is_empty() {
            return Err(format!("generator produced an invalid complex:\n{}", print_complex(c)));
        }
        let r = reduce(c).map_err(|e| e.to_string())?;
        ensure(is_simple(&r), || format!("not simple:\n{}", print_complex(c)))?;
        let conj = c.conjugate(r.witness()).map_err(|e| e.to_string())?;
        ensure(conj == r.simple_complex(), || {
            format!("witness does not conjugate:\n{}", print_complex(c))
        })?;
    }
    Ok(format!("{} complexes over F2, F5, Q", suite().len()))
}

fn uniqueness() -> Check {
    let mut r = rng(2);
    for i in 0..500 {
        let c = random_complex(&mut r, FIELDS[i % 3], ComplexParams::default());
        let t = random_triangular(&mut r, &c, 0.5);
        let d = c.conjugate(&t).map_err(|e| e.to_string())?;
        let (a, b) = (reduce(&c).unwrap(), reduce(&d).unwrap());
        ensure(a.partner_map() == b.partner_map() && a.types() == b.types(), || {
            format!("coupling moved under a triangular change:\n{}", print_complex(&c))
        })?;
    }
    Ok("500 (c, T) pairs".into())
}

fn homology() -> Check {
    for c in suite() {
        let h = homology_ranks(c).map_err(|e| e.to_string())?;
        let counted = reduce(c).unwrap().homological_counts();
        ensure(h == counted, || {
            format!("ranks {h:?} vs counts {counted:?}:\n{}", print_complex(c))
        })?;
    }
    Ok(format!("{} complexes", suite().len()))
}

fn pairing_oracle() -> Check {
    let (mut checked, mut trips) = (0, 0);
    for c in suite() {
        let r = reduce(c).unwrap();
        let partners = r.partner_map();
        for p in c.generators() {
            for q in c.generators() {
                if p.degree == q.degree + 1 && p.value > q.value {
                    let couple = partners.get(&p.name) == Some(&q.name);
                    let oracle = persistence_rank_oracle(c, &q.name, &p.name).map_err(|e| e.to_string())?;
                    ensure(oracle == couple, || {
                        format!("({}, {}) disagrees:\n{}", q.name, p.name, print_complex(c))
                    })?;
                    checked += 1;
                }
            }
        }
        for (p, q) in r.pairs() {
            let (vp, vq) = (&c.generator(&p).unwrap().value, &c.generator(&q).unwrap().value);
            let born = class_birth(c, &r.reduced_boundary(&p).unwrap(), vp).map_err(|e| e.to_string())?;
            let dies = class_death(c, &r.cycle_of(&q).unwrap(), None).map_err(|e| e.to_string())?;
            ensure(born == Level::At(vq.clone()) && dies == Level::At(vp.clone()), || {
                format!("({p}, {q}) birth {born} death {dies}:\n{}", print_complex(c))
            })?;
            trips += 1;
        }
    }
    Ok(format!("{checked} (q, p) candidates, {trips} birth/death round trips"))
}

fn bifurcations() -> Check {
    let mut r = rng(5);
    let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
    let mut total = 0;
    for _ in 0..100_000 {
        let quota = ["A", "B", "C"].iter().all(|k| tally.get(k).copied().unwrap_or(0) >= 50);
        if total >= 1000 && quota {
            break;
        }
        let field = FIELDS[r.random_range(0..3)];
        let (dim, pairs) = (r.random_range(2..=4), r.random_range(2..=5));
        let c = random_sphere_complex(&mut r, field, dim, pairs, 0.6);
        let i = r.random_range(1..c.len() - 2);
        let (a, b) = (&c.generators()[i], &c.generators()[i + 1]);
        if a.degree != b.degree {
            continue;
        }
        let swap = PathEvent::Swap {
            a: a.name.clone(),
            b: b.name.clone(),
        };
        let report = match classify_transposition(&c, &swap) {
            Ok(rep) => rep,
            Err(EventError::Incident { .. }) => continue,
            Err(e) => return Err(format!("{swap}: {e}")),
        };
        let case = match report.case {
            BifurcationCase::A(_) => "A",
            BifurcationCase::B => "B",
            BifurcationCase::C => "C",
            other => return Err(format!("{swap} classified {other}:\n{}", print_complex(&c))),
        };
        ensure(report.condition_held == Some(report.changed), || {
            format!(
                "{swap}: case {} condition {:?} changed {}:\n{}",
                report.case,
                report.condition_held,
                report.changed,
                print_complex(&c)
            )
        })?;
        *tally.entry(case).or_default() += 1;
        total += 1;
    }
    let quota = ["A", "B", "C"].iter().all(|k| tally.get(k).copied().unwrap_or(0) >= 50);
    ensure(total >= 1000 && quota, || {
        format!("quota not met: {total} swaps, {tally:?}")
    })?;
    Ok(format!(
        "{total} swaps, A {} B {} C {}",
        tally["A"], tally["B"], tally["C"]
    ))
}

fn birth_death() -> Check {
    let mut r = rng(6);
    for i in 0..200 {
        let c = random_complex(&mut r, FIELDS[i % 3], ComplexParams::default());
        let before = reduce(&c).unwrap();
        let below = match c.len() {
            0 => Value::from_i64(0),
            n => c.generators()[r.random_range(0..n)].value.clone(),
        };
        let birth = PathEvent::Birth {
            p: "bp".into(),
            q: "bq".into(),
            degree: r.random_range(0..3),
            below,
        };
        let born = apply_event(&c, &birth).map_err(|e| format!("{birth}: {e}"))?;
        let after = reduce(&born).unwrap();
        let mut kept = after.partner_map();
        kept.remove("bp");
        kept.remove("bq");
        ensure(
            after.partner("bp") == Some("bq") && after.generator_type("bp") == Some(GeneratorType::Upper),
            || format!("{birth} did not add an upper couple:\n{}", print_complex(&c)),
        )?;
        ensure(kept == before.partner_map(), || {
            format!("{birth} moved other couples:\n{}", print_complex(&c))
        })?;
        let dead = apply_event(
            &born,
            &PathEvent::Death {
                p: "bp".into(),
                q: "bq".into(),
            },
        )
        .map_err(|e| e.to_string())?;
        ensure(
            reduce(&dead).unwrap().partner_map() == before.partner_map() && dead == c,
            || format!("death after {birth} is not the identity:\n{}", print_complex(&c)),
        )?;
    }
    Ok("200 births and deaths".into())
}

struct FamilyEntry {
    diagram: FramedDiagram,
    outcome: SolveOutcome,
}

fn family_dims() -> Vec<u32> {
    match std::env::var_os("ACCEPTANCE_DIM3") {
        Some(_) => vec![1, 2, 3],
        None => vec![1, 2],
    }
}

/// Every framed diagram with at most 3 pairs plus the two extremes, solved once.
fn family() -> &'static [FamilyEntry] {
    static FAMILY: OnceLock<Vec<FamilyEntry>> = OnceLock::new();
    FAMILY.get_or_init(|| {
        let mut out = Vec::new();
        for dim in family_dims() {
            for pairs in 0..=3 {
                for diagram in all_diagrams(dim, pairs, false) {
                    let outcome = solve(&diagram, DEFAULT_MAX_STATES).unwrap();
                    out.push(FamilyEntry { diagram, outcome });
                }
            }
        }
        out
    })
}

fn replay(d: &FramedDiagram, moves: &[Move]) -> Result<(), String> {
    let end = moves
        .iter()
        .try_fold(d.clone(), |cur, m| apply_move(&cur, m))
        .map_err(|e| format!("certificate does not replay: {e}\n{}", print_diagram(d)))?;
    ensure(end.is_standard(), || {
        format!("certificate ends off the standard diagram:\n{}", print_diagram(d))
    })
}

fn formal_solver() -> Check {
    let mut r = rng(7);
    let mut moves_checked = 0;
    let mut replays = 0;
    for _ in 0..500 {
        let (dim, pairs) = (r.random_range(1..=4), r.random_range(0..=4));
        let d = random_framed_diagram(&mut r, dim, pairs);
        let type_two: BTreeMap<String, u32> = d
            .classify_pairs()
            .into_iter()
            .filter(|(_, c)| c.kind == PairKind::InvertedII)
            .flat_map(|((u, l), c)| [(u, c.index), (l, c.index)])
            .collect();
        for m in enumerate_moves(&d, true) {
            let e = apply_move(&d, &m).map_err(|e| e.to_string())?;
            ensure(e.inverted_count() % 2 == d.inverted_count() % 2, || {
                format!("(a) {m} changed the parity of\n{}", print_diagram(&d))
            })?;
            for ((u, l), c) in e.classify_pairs() {
                for id in [u, l] {
                    if let Some(&k) = type_two.get(&id) {
                        ensure(c.kind != PairKind::InvertedII || c.index == k, || {
                            format!("(b) {m} moved type-II point {id} of\n{}", print_diagram(&d))
                        })?;
                    }
                }
            }
            moves_checked += 1;
        }
        if let SolveOutcome::Reachable(ms) = solve(&d, DEFAULT_MAX_STATES).unwrap() {
            replay(&d, &ms)?;
            replays += 1;
        }
    }
    let mut search = BirthBoundedSearch::new();
    let mut reachable = 0;
    for entry in family() {
        let plain = match &entry.outcome {
            SolveOutcome::Reachable(ms) => {
                replay(&entry.diagram, ms)?;
                replays += 1;
                true
            }
            SolveOutcome::Unreachable(_) => false,
            SolveOutcome::Undecided(n) => {
                return Err(format!(
                    "(c) undecided after {n} states:\n{}",
                    print_diagram(&entry.diagram)
                ))
            }
        };
        reachable += plain as usize;
        ensure(search.reachable(&entry.diagram, 2) == plain, || {
            format!("(c) births change reachability of\n{}", print_diagram(&entry.diagram))
        })?;
    }
    Ok(format!(
        "(a, b) {moves_checked} moves; (c) {} diagrams in dims {:?}, {reachable} reachable, agree with births <= 2; (d) {replays} replays",
        family().len(),
        family_dims()
    ))
}

// Minimum at the bottom framed up, maximum at the top framed down, so the
// obstruction is not just a badly framed extreme.
fn standard_extremes(d: &FramedDiagram) -> bool {
    let points = d.points();
    let by_rank = |r: usize| points.iter().find(|p| p.rank == r).unwrap();
    let (lo, hi) = (by_rank(1), by_rank(points.len()));
    d.partner(&lo.id).is_none()
        && d.partner(&hi.id).is_none()
        && (lo.degree, lo.frame) == (0, Frame::Up)
        && (hi.degree, hi.frame) == (d.dim(), Frame::Down)
}

fn obstruction_exists() -> Check {
    let found: Vec<&FamilyEntry> = family()
        .iter()
        .filter(|e| e.diagram.inverted_count() % 2 == 0)
        .filter(|e| matches!(e.outcome, SolveOutcome::Unreachable(Certificate::Exhausted(_))))
        .collect();
    let subtle: Vec<&&FamilyEntry> = found.iter().filter(|e| standard_extremes(&e.diagram)).collect();
    let first = subtle
        .first()
        .ok_or("no even-parity obstructed diagram with standard extremes")?;
    ensure(print_diagram(&first.diagram) == OBSTRUCTED, || {
        format!("first discovery changed, now:\n{}", print_diagram(&first.diagram))
    })?;
    let fixture = parse_diagram(OBSTRUCTED).map_err(|e| format!("fixture: {e}"))?;
    let outcome = solve(&fixture, DEFAULT_MAX_STATES).unwrap();
    ensure(
        matches!(outcome, SolveOutcome::Unreachable(Certificate::Exhausted(_))),
        || format!("fixture is now {outcome}"),
    )?;
    Ok(format!(
        "{} even-parity obstructed diagrams, {} with standard extremes; fixture has {} inverted pairs, {}",
        found.len(),
        subtle.len(),
        fixture.inverted_count(),
        outcome.to_string().trim()
    ))
}

fn two_degree() -> Check {
    let mut r = rng(9);
    let mut sizes = [0usize; 7];
    for &field in &FIELDS {
        let mut done = 0;
        let mut tries = 0;
        while done < 200 {
            tries += 1;
            if tries > 100_000 {
                return Err(format!("only {done} invertible matrices over {field}"));
            }
            let n = r.random_range(1..=6);
            let c = random_two_degree(&mut r, field, n);
            if homology_ranks(&c).unwrap().values().any(|&h| h != 0) {
                continue;
            }
            let res = reduce(&c).unwrap();
            let pm = res.partner_map();
            ensure(res.pairs().len() == n && pm.len() == 2 * n, || {
                format!("not a bijection:\n{}", print_complex(&c))
            })?;
            for _ in 0..3 {
                let t = random_triangular(&mut r, &c, 0.7);
                let moved = reduce(&c.conjugate(&t).unwrap()).unwrap().partner_map();
                ensure(moved == pm, || format!("coupling moved:\n{}", print_complex(&c)))?;
            }
            sizes[n] += 1;
            done += 1;
        }
    }
    Ok(format!("600 invertible matrices, sizes 1..6: {:?}", &sizes[1..]))
}

fn cli_determinism() -> Check {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests");
    let cases: &[(&str, &[&str])] = &[
        ("reduce_ex1.txt", &["reduce", "ex1.cx"]),
        ("reduce_ex2.txt", &["reduce", "ex2.cx"]),
        ("diagram_ex1.txt", &["diagram", "ex1.cx"]),
        (
            "diagram_ex1_framed.txt",
            &["diagram", "ex1.cx", "--frames", "ex1.frames"],
        ),
        ("diagram_ex2.txt", &["diagram", "ex2.cx"]),
        ("path_ex1.txt", &["path", "ex1.cx", "ex1.path"]),
        ("path_ex2.txt", &["path", "ex2.cx", "ex2.path"]),
        ("formal_std.txt", &["formal", "std.fd"]),
        ("formal_two_inverted.txt", &["formal", "two_inverted.fd"]),
    ];
    for (golden, args) in cases {
        let expected = fs::read(root.join("golden").join(golden)).map_err(|e| format!("{golden}: {e}"))?;
        for _ in 0..2 {
            let out = Command::new(env!("CARGO_BIN_EXE_barannikov"))
                .current_dir(root.join("fixtures"))
                .args(*args)
                .output()
                .map_err(|e| e.to_string())?;
            ensure(out.status.code() == Some(0), || {
                format!("{args:?} exited {:?}", out.status.code())
            })?;
            ensure(out.stdout == expected, || format!("{args:?} differs from {golden}"))?;
        }
    }
    Ok(format!("{} commands, two runs each, byte-exact", cases.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("simplicity and conjugacy", simplicity_and_conjugacy),
        ("uniqueness of the coupling", uniqueness),
        ("homology from the coupling", homology),
        ("pairing oracle agreement", pairing_oracle),
        ("bifurcation equivalence", bifurcations),
        ("birth and death", birth_death),
        ("formal solver", formal_solver),
        ("even-parity obstruction", obstruction_exists),
        ("two-degree double coset", two_degree),
        ("CLI determinism", cli_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
