//! The acceptance gate: every release-blocking claim the workbench makes,
//! one pass/fail line each. Run with `cargo test --test acceptance --
//! --nocapture` to see the lines on success; any failure fails the test.

mod oracle;

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use halin::constructions::{extremal_family, random_c4free_halin};
use halin::cycles::{contains_cycle, shortest_cycle_through_edge};
use halin::enumeration::{
    base_case_audit, conjecture_scan, count_halin, enumerate_halin, extremal_number, DEFAULT_LIMIT,
    MAX_LIMIT,
};
use halin::graph::VertexClass;
use halin::reductions::{apply_at, find_reduction_of, ReductionRule};
use halin::HalinGraph;

type Criterion = fn() -> Result<String, String>;

#[test]
fn acceptance() {
    let criteria: [(&str, Criterion); 8] = [
        ("1 base cases", base_cases_via_binary),
        ("2 structure audit", structure_audit),
        ("3 construction formula", construction_formula),
        ("4 induction range", induction_range),
        ("5 reduction suite", reduction_suite),
        ("6 lemma properties", lemma_properties),
        ("7 oracle equivalence", oracle_equivalence),
        ("8 conjecture scan", c6_conjecture_scan),
    ];
    let mut failures = 0;
    for (name, criterion) in criteria {
        match catch_unwind(AssertUnwindSafe(criterion)).unwrap_or_else(|p| Err(panic_text(p))) {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}

fn panic_text(p: Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| p.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "panicked".into())
}

/// ex_H(n, C4) for the three smallest sizes, via the installed binary.
fn base_cases_via_binary() -> Result<String, String> {
    let scratch = std::env::temp_dir().join(format!("halin-acceptance-{}", std::process::id()));
    fs::create_dir_all(&scratch).map_err(|e| e.to_string())?;
    let dir = scratch.to_str().expect("utf-8 path");
    let mut summary = Vec::new();
    for (n, want) in [(16, 25), (17, 26), (18, 28)] {
        let out = Command::new(env!("CARGO_BIN_EXE_halin"))
            .args([
                "extremal",
                "--n",
                &n.to_string(),
                "--forbid",
                "4",
                "--cache-dir",
                dir,
            ])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("n = {n}: exit {:?}", out.status.code()));
        }
        let text = String::from_utf8_lossy(&out.stdout);
        let first = text.lines().next().unwrap_or("");
        let expect = format!("ex_H({n}, C4) = {want}");
        if first != expect {
            return Err(format!(
                "n = {n}: binary printed {first:?}, wanted {expect:?}"
            ));
        }
        summary.push(want.to_string());
    }
    let _ = fs::remove_dir_all(&scratch);
    Ok(format!(
        "binary reports ex_H(n, C4) = {} for n = 16, 17, 18",
        summary.join(", ")
    ))
}

/// The per-longest-path census of C4-free graphs at n = 16, 17, 18.
fn structure_audit() -> Result<String, String> {
    let mut claims = 0;
    for n in 16..=18 {
        let report = base_case_audit(n, DEFAULT_LIMIT).map_err(|e| e.to_string())?;
        if !report.all_hold {
            let bad: Vec<&str> = report
                .claims
                .iter()
                .filter(|c| !c.holds)
                .map(|c| c.claim)
                .collect();
            return Err(format!("n = {n}: violated claims {bad:?}"));
        }
        claims += report.claims.len();
        let class = |k: usize| report.classes.iter().find(|c| c.longest_path == k);
        let spot = match n {
            16 => class(6).is_some_and(|c| c.max_edges == 24) && class(5).is_none(),
            17 => class(4).is_none() && class(5).is_some_and(|c| c.max_edges == 26),
            _ => class(6).is_some_and(|c| c.max_edges == 28),
        };
        if !spot {
            return Err(format!("n = {n}: class table {:?} off", report.classes));
        }
    }
    Ok(format!("{claims} claims hold across n = 16, 17, 18"))
}

/// The closed-form edge count, recomputed here case by case, and
/// C4-freeness of the construction for every n in 16..=200.
fn construction_formula() -> Result<String, String> {
    for n in 16..=200 {
        let g = extremal_family(n).map_err(|e| e.to_string())?;
        let want = if (n - 1) % 3 == 0 {
            5 * (n - 1) / 3
        } else if (n - 2) % 3 == 0 {
            5 * (n - 2) / 3 + 1
        } else {
            5 * (n - 3) / 3 + 3
        };
        if g.edge_count() != want {
            return Err(format!(
                "n = {n}: {} edges, formula says {want}",
                g.edge_count()
            ));
        }
        if g.n() != n {
            return Err(format!("n = {n}: construction has {} vertices", g.n()));
        }
        if contains_cycle(&g, 4).is_some() {
            return Err(format!("n = {n}: construction contains a C4"));
        }
    }
    Ok("edge formula and C4-freeness hold for every n in 16..=200".into())
}

/// The first two sizes past the base cases, against the same closed form.
fn induction_range() -> Result<String, String> {
    for (n, want) in [(19, 30), (20, 31)] {
        let record = extremal_number(n, 4, MAX_LIMIT).map_err(|e| e.to_string())?;
        if record.max_edges != Some(want) {
            return Err(format!("n = {n}: got {:?}, want {want}", record.max_edges));
        }
    }
    Ok("ex_H(19, C4) = 30 and ex_H(20, C4) = 31 by exhaustive search".into())
}

/// Every applicable reduction on 1000 random C4-free graphs: exact edge
/// deltas, and validity plus C4-freeness of every result.
fn reduction_suite() -> Result<String, String> {
    let mut fired = [0u32; 3];
    for i in 0..1000u64 {
        let n = 16 + (i as usize % 45);
        let g = random_c4free_halin(n, i).map_err(|e| format!("seed {i} (n = {n}): {e}"))?;
        for (slot, rule) in ReductionRule::ALL.into_iter().enumerate() {
            let Some(site) = find_reduction_of(&g, rule) else {
                continue;
            };
            let step = apply_at(&g, &site).map_err(|e| format!("seed {i}, {rule}: {e}"))?;
            if step.before_edges - step.after_edges != rule.edge_delta() {
                return Err(format!(
                    "seed {i}, {rule}: delta {} instead of {}",
                    step.before_edges - step.after_edges,
                    rule.edge_delta()
                ));
            }
            if !step.result.validate().is_valid() {
                return Err(format!("seed {i}, {rule}: result is not a Halin graph"));
            }
            if contains_cycle(&step.result, 4).is_some() {
                return Err(format!("seed {i}, {rule}: result contains a C4"));
            }
            fired[slot] += 1;
        }
    }
    if fired.contains(&0) {
        return Err(format!("a rule never applied: {fired:?}"));
    }
    Ok(format!(
        "{} applications over 1000 graphs (leaf-removal {}, smoothing {}, contraction {}), all exact and C4-free",
        fired.iter().sum::<u32>(),
        fired[0],
        fired[1],
        fired[2]
    ))
}

/// Longest-path semi-pendants and the two shortest-cycle lower bounds,
/// over every enumerated C4-free graph with n <= 14.
fn lemma_properties() -> Result<String, String> {
    let mut checked = 0;
    for n in 4..=14 {
        for g in enumerate_halin(n, DEFAULT_LIMIT).map_err(|e| e.to_string())? {
            if contains_cycle(&g, 4).is_some() {
                continue;
            }
            checked += 1;
            semi_pendants_are_two_leaf_branching(&g).map_err(|e| format!("n = {n}: {e}"))?;
            let t = g.tree();
            for f in g.bounded_faces() {
                let w = shortest_cycle_through_edge(&g, f.cycle_edge).map_err(|e| e.to_string())?;
                if w.length < f.size() {
                    return Err(format!(
                        "n = {n}: cycle of length {} through outer edge {:?} beats face size {}",
                        w.length,
                        f.cycle_edge,
                        f.size()
                    ));
                }
            }
            for (a, b) in t.edges() {
                let (f1, f2) = g.faces_of_tree_edge(a, b).expect("tree edge");
                let floor = f1.size().min(f2.size());
                let w = shortest_cycle_through_edge(&g, (a, b)).map_err(|e| e.to_string())?;
                if w.length < floor {
                    return Err(format!(
                        "n = {n}: cycle of length {} through tree edge ({a}, {b}) beats face floor {floor}",
                        w.length
                    ));
                }
            }
        }
    }
    Ok(format!(
        "semi-pendant and shortest-cycle bounds hold on all {checked} C4-free graphs with n <= 14"
    ))
}

fn semi_pendants_are_two_leaf_branching(g: &HalinGraph) -> Result<(), String> {
    let t = g.tree();
    let classes = g.classify_vertices();
    let leaves: Vec<usize> = t.leaves().collect();
    let mut best = 0;
    let mut maximal: Vec<Vec<usize>> = Vec::new();
    for (i, &a) in leaves.iter().enumerate() {
        for &b in &leaves[i + 1..] {
            let path = t.path_between(a, b);
            let k = path.len() - 1;
            if k > best {
                best = k;
                maximal.clear();
            }
            if k == best {
                maximal.push(path);
            }
        }
    }
    for path in maximal {
        for sp in [path[1], path[path.len() - 2]] {
            if classes[sp] != VertexClass::Branching {
                return Err(format!(
                    "semi-pendant {sp} of {path:?} is {:?}",
                    classes[sp]
                ));
            }
            let leaf_nbrs = t.rotation(sp).iter().filter(|&&w| t.is_leaf(w)).count();
            if leaf_nbrs != 2 {
                return Err(format!(
                    "semi-pendant {sp} of {path:?} has {leaf_nbrs} leaves"
                ));
            }
        }
    }
    Ok(())
}

/// The canonical enumerator against a from-scratch labeled-tree census at
/// n <= 8, and the cycle finder against subset brute force at n <= 12.
fn oracle_equivalence() -> Result<String, String> {
    let mut counts = Vec::new();
    for n in 4..=8 {
        let fast = count_halin(n, DEFAULT_LIMIT).map_err(|e| e.to_string())?;
        let slow = oracle::plane_tree_count(n) as u64;
        if fast != slow {
            return Err(format!(
                "n = {n}: enumeration says {fast}, labeled census says {slow}"
            ));
        }
        counts.push(fast.to_string());
    }
    for n in 4..=12 {
        for g in enumerate_halin(n, DEFAULT_LIMIT).map_err(|e| e.to_string())? {
            if contains_cycle(&g, 4).is_some() != oracle::has_c4_by_subsets(&g) {
                return Err(format!("n = {n}: C4 detectors disagree"));
            }
        }
    }
    Ok(format!(
        "plane-tree counts {} match the labeled census; C4 detection agrees through n = 12",
        counts.join(", ")
    ))
}

/// The C6 bound over everything enumerable at the default limit: exact
/// arithmetic, range labeling, and no counterexample where the bound is
/// asserted.
fn c6_conjecture_scan() -> Result<String, String> {
    let rows = conjecture_scan(6, 4..=18, DEFAULT_LIMIT).map_err(|e| e.to_string())?;
    let mut out_of_range_exceeders = Vec::new();
    for row in &rows {
        if row.bound_num != 8 * (row.n - 1) || row.bound_den != 5 {
            return Err(format!(
                "n = {}: bound is {}/{}",
                row.n, row.bound_num, row.bound_den
            ));
        }
        if row.in_stated_range != (row.n >= 21) {
            return Err(format!(
                "n = {}: range label {}",
                row.n, row.in_stated_range
            ));
        }
        match row.max_edges {
            Some(e) => {
                let exceeds = 5 * e > row.bound_num;
                if row.exceeds_bound != exceeds {
                    return Err(format!("n = {}: exceeds flag wrong for e = {e}", row.n));
                }
            }
            None => {
                if row.exceeds_bound {
                    return Err(format!("n = {}: exceeds without any C6-free graph", row.n));
                }
            }
        }
        if row.exceeds_bound && row.in_stated_range {
            return Err(format!(
                "n = {}: counterexample inside the stated range",
                row.n
            ));
        }
        if row.exceeds_bound {
            out_of_range_exceeders.push(row.n);
        }
    }
    Ok(format!(
        "no counterexample over n = 4..=18; bound exceeded only at n = {:?}, below the stated range",
        out_of_range_exceeders
    ))
}
