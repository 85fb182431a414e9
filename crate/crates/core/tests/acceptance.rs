//! End-to-end checks, one line per criterion.
//!
//! Runs without the libtest harness so the PASS/FAIL lines are always shown.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use alcove_csp::affine_shi::{
    all_parking_functions, analyze_shi, coset_parking, dilation_hasse, enumerate_dilation,
    enumerate_regions, expected_region_count, new_labeling, pak_stanley, parking_csp,
    shi_signature, sommers_translation, translated_alcoves, translation_candidates,
    AffinePermutation, ParkingFunction,
};
use alcove_csp::bijact::{
    is_equitable, is_successful, q_trace, rightmost_equitable, successful_partition,
    successful_partition_trace, tree_rank, w_inverse, w_map, PartitionedWord,
};
use alcove_csp::cores::{
    abacus, boundary_word, core_to_word, in_y, is_core, rectangle_stack, word_to_core, y_hasse,
    Partition,
};
use alcove_csp::sieve::w_poly;
use alcove_csp::words::{all_words, enumerate_w, rotation_orbits};
use alcove_csp::xposet::{
    check_phi_graph_automorphism, classify_cover, extended_word, phi, phi_symmetry_report, x_hasse,
    CoverType, ProofCase,
};
use alcove_csp::{csp_check, Edge, Word};
use num_complex::Complex64;
use rayon::prelude::*;

type Check = Result<(), String>;

/// Name, check and time budget.
type Criterion = (&'static str, fn() -> Check, Duration);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn w(m: u32, s: &str) -> Word {
    Word::parse(m, s).unwrap()
}

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

/// Every `(m, k)` with `m, k <= 6` and `m^k <= 50000`.
fn desk_range() -> Vec<(u32, usize)> {
    (1..=6u32)
        .flat_map(|m| (1..=6usize).map(move |k| (m, k)))
        .filter(|&(m, k)| u64::from(m).pow(k as u32) <= 50_000)
        .collect()
}

fn orbit_table() -> Check {
    // (X orbit, extended words, W orbit), each listed in phi order
    let rows: [(&[&str], &[&str], &[&str]); 6] = [
        (
            &["00", "03", "33"],
            &["003 332 221 110", "033 322 211 100", "333 222 111 000"],
            &["003", "030", "300"],
        ),
        (
            &["10", "30", "32"],
            &["103 032 321 210", "303 232 121 010", "323 212 101 030"],
            &["133", "331", "313"],
        ),
        (
            &["01", "13", "22"],
            &["013 302 231 120", "133 022 311 200", "223 112 001 330"],
            &["012", "120", "201"],
        ),
        (
            &["11", "02", "23"],
            &["113 002 331 220", "023 312 201 130", "233 122 011 300"],
            &["102", "021", "210"],
        ),
        (
            &["21", "20", "31"],
            &["213 102 031 320", "203 132 021 310", "313 202 131 020"],
            &["223", "232", "322"],
        ),
        (&["12"], &["123 012 301 230"], &["111"]),
    ];
    let orbits = rotation_orbits(4, 2).map_err(|e| e.to_string())?;
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for o in &orbits {
        *sizes.entry(o.len()).or_default() += 1;
    }
    ensure!(
        sizes == BTreeMap::from([(1, 1), (3, 5)]),
        "orbit sizes {sizes:?}"
    );
    let computed: BTreeSet<BTreeSet<Word>> =
        orbits.iter().map(|o| o.iter().cloned().collect()).collect();
    let expected: BTreeSet<BTreeSet<Word>> = rows
        .iter()
        .map(|(_, _, ws)| ws.iter().map(|s| w(4, s)).collect())
        .collect();
    ensure!(computed == expected, "W orbits differ from the reference");
    for (xs, exts, ws) in rows {
        for (j, x) in xs.iter().enumerate() {
            let x = w(4, x);
            let ext = extended_word(&x).grouped();
            ensure!(ext == exts[j], "extended word of {x} is {ext}");
            let image = w_map(&x);
            ensure!(image == w(4, ws[j]), "w({x}) = {image}, expected {}", ws[j]);
            let next = w(4, xs[(j + 1) % xs.len()]);
            ensure!(phi(&x) == next, "phi({x}) = {}, expected {next}", phi(&x));
        }
    }
    Ok(())
}

/// Horner evaluation in floating point, independent of the library.
fn eval_at_root(p: &alcove_csp::IntPolynomial, n: u64, c: u64) -> Complex64 {
    let z = Complex64::from_polar(1.0, TAU * c as f64 / n as f64);
    p.coefficients()
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, a| {
            acc * z + Complex64::new(a.to_string().parse::<f64>().unwrap(), 0.0)
        })
}

fn csp() -> Check {
    for (m, k) in desk_range() {
        let ws = enumerate_w(m, k).map_err(|e| e.to_string())?;
        ensure!(
            ws.len() as u64 == u64::from(m).pow(k as u32),
            "|W({m},{k})| = {}",
            ws.len()
        );
        let n = k as u64 + 1;
        let poly = w_poly(m, k);
        let report = csp_check(&ws, Word::rotate_left, n, &poly).map_err(|e| e.to_string())?;
        ensure!(
            report.passed(),
            "W({m},{k}): mismatches at c = {:?}",
            report.mismatches()
        );
        for row in &report.rows {
            // brute-force fixed points of c rotations
            let fixed = ws
                .iter()
                .filter(|u| {
                    let mut v = (*u).clone();
                    for _ in 0..row.c {
                        v = v.rotate_left();
                    }
                    v == **u
                })
                .count() as u64;
            ensure!(
                fixed == row.fixed,
                "W({m},{k}) c={}: {fixed} fixed, report says {}",
                row.c,
                row.fixed
            );
            let z = eval_at_root(&poly, n, row.c);
            let close = (z - Complex64::new(fixed as f64, 0.0)).norm() < 1e-9;
            ensure!(
                close,
                "W({m},{k}) c={}: p(ω^c) ≈ {z}, fixed = {fixed}",
                row.c
            );
        }
    }
    Ok(())
}

fn round_trips() -> Check {
    for (m, k) in desk_range() {
        let xs = all_words(m, k).map_err(|e| e.to_string())?;
        let bad = xs
            .par_iter()
            .find_any(|x| w_inverse(&w_map(x)).ok().as_ref() != Some(*x));
        ensure!(bad.is_none(), "w_inverse(w_map({})) differs", bad.unwrap());
        let ws = enumerate_w(m, k).map_err(|e| e.to_string())?;
        let bad = ws
            .par_iter()
            .find_any(|u| w_inverse(u).map(|x| w_map(&x)).ok().as_ref() != Some(*u));
        ensure!(bad.is_none(), "w_map(w_inverse({})) differs", bad.unwrap());
    }
    Ok(())
}

fn equivariance() -> Check {
    for (m, k) in desk_range() {
        let xs = all_words(m, k).map_err(|e| e.to_string())?;
        let bad = xs
            .par_iter()
            .find_any(|x| w_map(&phi(x)) != w_map(x).rotate_left());
        ensure!(
            bad.is_none(),
            "w_map(phi({})) is not a rotation",
            bad.unwrap()
        );
    }
    Ok(())
}

fn traces() -> Check {
    let start = PartitionedWord::parse(4, "3|2|1|0302").map_err(|e| e.to_string())?;
    let (steps, out) = q_trace(&start);
    let expected = [
        (0, "3|2|1|0302", ""),
        (3, "·|2|1|0302", "3"),
        (3, "·|2|1|302", "33"),
        (2, "·|2|1|02", "332"),
        (3, "·|2|·|02", "3323"),
        (3, "·|2|·|2", "33233"),
        (1, "·|2|·|·", "332331"),
        (3, "·|·|·|·", "3323313"),
    ];
    ensure!(
        steps.len() == expected.len(),
        "{} read-off rows",
        steps.len()
    );
    for (s, (t, state, x)) in steps.iter().zip(expected) {
        let got = (s.label, s.state.to_string(), s.output.to_string());
        ensure!(
            got == (t, state.to_string(), x.to_string()),
            "read-off row {got:?}"
        );
    }
    ensure!(
        out.x == w(4, "3323313") && out.leftover.is_empty(),
        "read-off gave {}",
        out.x
    );

    let rounds: Vec<String> = successful_partition_trace(&w(4, "3210302"))
        .iter()
        .map(|r| r.current.to_string())
        .collect();
    ensure!(
        rounds == ["3210|30|2|·", "3|210|30|2", "3|2|10|302", "3|2|1|0302"],
        "partition search went {rounds:?}"
    );

    // the CLI pins the same traces byte for byte
    let readoff = include_str!("../../cli/tests/golden/readoff_3_2_1_0302.txt");
    for (i, (t, state, x)) in expected.iter().enumerate() {
        let x = if x.is_empty() { "·" } else { x };
        let line = readoff.lines().nth(i + 2).unwrap_or_default();
        let cells: Vec<&str> = line.split_whitespace().collect();
        ensure!(
            cells
                == [
                    (i + 1).to_string().as_str(),
                    t.to_string().as_str(),
                    state,
                    x
                ],
            "golden read-off line {line:?}"
        );
    }
    let search = include_str!("../../cli/tests/golden/invert_3210302.txt");
    for state in ["3210|30|2|·", "3|210|30|2", "3|2|10|302", "3|2|1|0302"] {
        ensure!(search.contains(state), "golden search file lacks {state}");
    }
    Ok(())
}

fn dendrodistinctivity() -> Check {
    for m in 1..=4u32 {
        let max_rank = if m == 1 {
            10
        } else {
            (1..).take_while(|&r| m.pow(r) <= 50_000).last().unwrap()
        };
        for r in 0..=max_rank as usize {
            let rank = tree_rank(m, r).map_err(|e| e.to_string())?;
            ensure!(
                rank.len() as u64 == u64::from(m).pow(r as u32),
                "m={m} r={r}: {} nodes",
                rank.len()
            );
            let words: BTreeSet<&Word> = rank.iter().map(|pw| pw.word()).collect();
            ensure!(words.len() == rank.len(), "m={m} r={r}: repeated words");
            let bad = rank.par_iter().find_any(|pw| !is_successful(pw));
            ensure!(
                bad.is_none(),
                "tree node {} is not successful",
                bad.unwrap()
            );
            // every successful partition of length r is a node
            let nodes: BTreeSet<&PartitionedWord> = rank.iter().collect();
            let missing = words
                .iter()
                .find(|x| !nodes.contains(&successful_partition(x)));
            ensure!(
                missing.is_none(),
                "successful partition of {} is not in the tree",
                missing.unwrap()
            );
        }
    }
    Ok(())
}

/// All weakly increasing tuples of `m - 1` dividers in `[0, len]`.
fn divider_tuples(m: u32, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 1..m {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                let lo = t.last().copied().unwrap_or(0);
                (lo..=len).map(move |b| {
                    let mut u = t.clone();
                    u.push(b);
                    u
                })
            })
            .collect();
    }
    out
}

fn uniqueness_oracle() -> Check {
    for m in 1..=4u32 {
        for len in 0..=7usize {
            let tuples = divider_tuples(m, len);
            let words = all_words(m, len).map_err(|e| e.to_string())?;
            let failure = words.par_iter().find_map_any(|x| {
                let all: Vec<PartitionedWord> = tuples
                    .iter()
                    .map(|d| PartitionedWord::new(x.clone(), d.clone()).unwrap())
                    .collect();
                let successful: Vec<&PartitionedWord> =
                    all.iter().filter(|pw| is_successful(pw)).collect();
                if successful.len() != 1 {
                    return Some(format!("{x}: {} successful partitions", successful.len()));
                }
                if *successful[0] != successful_partition(x) {
                    return Some(format!(
                        "{x}: search found {}, oracle {}",
                        successful_partition(x),
                        successful[0]
                    ));
                }
                let right = rightmost_equitable(x);
                if !is_equitable(&right) {
                    return Some(format!("{x}: {right} is not equitable"));
                }
                let beaten = all.iter().filter(|pw| is_equitable(pw)).find(|pw| {
                    pw.dividers()
                        .iter()
                        .zip(right.dividers())
                        .any(|(a, b)| a > b)
                });
                beaten.map(|pw| format!("{x}: equitable {pw} is right of {right}"))
            });
            ensure!(failure.is_none(), "m={m} len={len}: {}", failure.unwrap());
        }
    }
    Ok(())
}

fn core_model() -> Check {
    for (core, bits, rows, word) in [
        ("[3,1]", "011010000", ["011", "010", "000"], "21"),
        ("[2,1,1]", "010010000", ["010", "010", "000"], "20"),
        ("[4,2,1,1]", "011010010", ["011", "010", "010"], "31"),
    ] {
        let lambda = p(core);
        let got = core_to_word(&lambda, 4, 2).map_err(|e| e.to_string())?;
        ensure!(got == w(4, word), "{core} maps to {got}");
        let bw = boundary_word(&lambda, 4, 2).map_err(|e| e.to_string())?;
        let text: String = bw.0.iter().map(|b| char::from(b'0' + b)).collect();
        ensure!(text == bits, "boundary word of {core} is {text}");
        let display = abacus(&bw, 2).map_err(|e| e.to_string())?;
        let got_rows: Vec<String> = display
            .rows()
            .iter()
            .map(|r| r.iter().map(|b| char::from(b'0' + b)).collect())
            .collect();
        ensure!(got_rows == rows, "abacus of {core} is {got_rows:?}");
        ensure!(
            word_to_core(&w(4, word), 4, 2).ok() == Some(lambda),
            "{word} does not map back to {core}"
        );
    }
    for (indices, stack) in [
        (&[1, 1, 1][..], "[3,3,2,2,1,1]"),
        (&[2, 1, 1], "[4,2,2,1,1]"),
        (&[2, 2, 1], "[5,3,1,1]"),
        (&[2, 2, 2], "[6,4,2]"),
    ] {
        let got = rectangle_stack(2, indices).map_err(|e| e.to_string())?;
        ensure!(got == p(stack), "stack {indices:?} is {got}");
        ensure!(
            in_y(&got, 4, 2) && is_core(&got, 3),
            "{got} is not in Y(4,2)"
        );
    }
    Ok(())
}

fn isomorphisms() -> Check {
    for m in 1..=4u32 {
        for k in 1..=4usize {
            let x = x_hasse(m, k).map_err(|e| e.to_string())?;
            let y = y_hasse(m, k);
            ensure!(
                y.nodes.len() as u64 == u64::from(m).pow(k as u32),
                "|Y({m},{k})| = {}",
                y.nodes.len()
            );
            let to_word: BTreeMap<&Partition, Word> = y
                .nodes
                .iter()
                .map(|c| core_to_word(c, m, k).map(|x| (c, x)))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            let images: BTreeSet<&Word> = to_word.values().collect();
            ensure!(
                images.len() == y.nodes.len(),
                "core_to_word is not injective on Y({m},{k})"
            );
            let from_y: BTreeSet<Edge<Word>> = y
                .edges
                .iter()
                .map(|e| e.map(|c| to_word[c].clone()))
                .collect();
            ensure!(
                from_y == x.edge_set(),
                "Y({m},{k}) and X({m},{k}) covers differ"
            );

            // a cover adding a box in the first row is a wrap
            for e in &y.edges {
                let row_one = e.upper.parts().first() != e.lower.parts().first();
                let kind = classify_cover(&to_word[&e.lower], &to_word[&e.upper]).map(|c| c.kind);
                let want = if row_one {
                    CoverType::Wrap
                } else {
                    CoverType::Swap
                };
                ensure!(
                    kind == Some(want),
                    "cover {} < {} has kind {kind:?}",
                    e.lower,
                    e.upper
                );
            }

            let alcoves = enumerate_dilation(k + 1, m).map_err(|e| e.to_string())?;
            ensure!(
                alcoves.len() == y.nodes.len(),
                "dilation has {} alcoves",
                alcoves.len()
            );
            let by_perm: BTreeMap<&AffinePermutation, &Word> =
                alcoves.iter().map(|a| (&a.perm, &a.word)).collect();
            for a in &alcoves {
                ensure!(
                    to_word.get(&a.core) == Some(&a.word),
                    "alcove {} carries {} and {}",
                    a.perm,
                    a.core,
                    a.word
                );
            }
            let d = dilation_hasse(k + 1, m).map_err(|e| e.to_string())?;
            let from_d: BTreeSet<Edge<Word>> = d
                .edges
                .iter()
                .map(|e| e.map(|a| by_perm[a].clone()))
                .collect();
            ensure!(
                from_d == x.edge_set(),
                "dilation({},{m}) and X({m},{k}) covers differ",
                k + 1
            );
        }
    }
    Ok(())
}

fn phi_symmetry() -> Check {
    for m in 1..=5u32 {
        for k in 1..=5usize {
            ensure!(
                check_phi_graph_automorphism(m, k).map_err(|e| e.to_string())?,
                "phi breaks X({m},{k})"
            );
            let report = phi_symmetry_report(m, k).map_err(|e| e.to_string())?;
            ensure!(
                report.broken.is_empty(),
                "X({m},{k}): {} broken",
                report.broken.len()
            );
            ensure!(
                report.mispredicted.is_empty(),
                "X({m},{k}): {:?} mispredicted",
                report.mispredicted.first()
            );
            ensure!(
                report.preserved + report.reversed == report.edges,
                "X({m},{k}) edge count"
            );
        }
    }
    let all = phi_symmetry_report(4, 3).map_err(|e| e.to_string())?;
    for case in [
        ProofCase::WrapElsewhere,
        ProofCase::WrapOnLast,
        ProofCase::SwapElsewhere,
        ProofCase::SwapOnPair,
    ] {
        ensure!(
            all.cases.get(&case).copied().unwrap_or(0) > 0,
            "case {case:?} never occurs"
        );
    }
    ensure!(all.reversed > 0, "no edge of X(4,3) is reversed");
    Ok(())
}

fn shi() -> Check {
    let label_set = |labels: &[ParkingFunction]| labels.iter().cloned().collect::<BTreeSet<_>>();
    for (k, m) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let regions = enumerate_regions(k, m).map_err(|e| e.to_string())?;
        let expected = (k * m as usize + 1).pow(k as u32 - 1);
        ensure!(
            expected_region_count(k, m) == expected,
            "expected count formula"
        );
        ensure!(
            regions.len() == expected,
            "({k},{m}): {} regions",
            regions.len()
        );
        let signatures: BTreeSet<_> = regions.iter().map(|r| &r.signature).collect();
        ensure!(
            signatures.len() == expected,
            "({k},{m}): repeated signatures"
        );
        for r in &regions {
            let at_sample = shi_signature(&r.sample, k, m).map_err(|e| e.to_string())?;
            let at_alcove = shi_signature(&r.minimal_alcove.alcove_sample(), k, m)
                .map_err(|e| e.to_string())?;
            ensure!(
                at_sample == r.signature && at_alcove == r.signature,
                "region {} is not witnessed",
                r.id
            );
            ensure!(
                r.length == r.minimal_alcove.length(),
                "region {} length",
                r.id
            );
        }

        let parking = all_parking_functions(k, m);
        ensure!(
            parking.len() == expected,
            "({k},{m}): {} parking functions",
            parking.len()
        );
        let ps: Vec<ParkingFunction> = regions
            .iter()
            .map(|r| pak_stanley(&r.signature, k, m))
            .collect();
        ensure!(
            label_set(&ps) == label_set(&parking),
            "({k},{m}): Pak-Stanley is not a bijection"
        );

        let coset = new_labeling(k, m).map_err(|e| e.to_string())?;
        ensure!(
            coset.len() == expected,
            "({k},{m}): {} coset labels",
            coset.len()
        );
        ensure!(
            label_set(&coset) == label_set(&parking),
            "({k},{m}): coset labeling is not a bijection"
        );

        let n = k as u32 * m + 1;
        let us = enumerate_w(n, k - 1).map_err(|e| e.to_string())?;
        for u in &us {
            let a = coset_parking(u, m).map_err(|e| e.to_string())?;
            let b = coset_parking(&u.rotate_left(), m).map_err(|e| e.to_string())?;
            ensure!(
                b == a.rotate_left(),
                "({k},{m}): coset label of {u} does not rotate"
            );
        }

        let report = parking_csp(k, m).map_err(|e| e.to_string())?;
        ensure!(
            report.passed(),
            "({k},{m}): parking CSP fails at {:?}",
            report.mismatches()
        );
    }

    for (k, m) in [(2, 1), (2, 2), (3, 1)] {
        let t = sommers_translation(k, m).map_err(|e| e.to_string())?;
        let dilation = enumerate_dilation(k, k as u32 * m + 1).map_err(|e| e.to_string())?;
        let regions = enumerate_regions(k, m).map_err(|e| e.to_string())?;
        let moved: BTreeSet<AffinePermutation> = translated_alcoves(&dilation, &t)
            .map_err(|e| e.to_string())?
            .iter()
            .map(AffinePermutation::invert)
            .collect();
        let minimal: BTreeSet<AffinePermutation> =
            regions.iter().map(|r| r.minimal_alcove.clone()).collect();
        ensure!(moved == minimal, "({k},{m}): translation {t:?} misses");
        let candidates =
            translation_candidates(k, m, &dilation, &regions).map_err(|e| e.to_string())?;
        ensure!(
            candidates == [t.clone()],
            "({k},{m}): candidates {candidates:?}"
        );
        let analysis = analyze_shi(k, m).map_err(|e| e.to_string())?;
        ensure!(
            analysis.translation == t,
            "({k},{m}): analysis used {:?}",
            analysis.translation
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (
            "1 orbit table for m=4, k=2",
            orbit_table,
            Duration::from_secs(1),
        ),
        ("2 cyclic sieving on W", csp, Duration::from_secs(60)),
        (
            "3 bijection round trips",
            round_trips,
            Duration::from_secs(120),
        ),
        (
            "4 phi becomes rotation",
            equivariance,
            Duration::from_secs(120),
        ),
        (
            "5 read-off and partition search traces",
            traces,
            Duration::from_secs(1),
        ),
        (
            "6 dendrodistinctivity",
            dendrodistinctivity,
            Duration::from_secs(120),
        ),
        (
            "7 uniqueness and rightmost dominance",
            uniqueness_oracle,
            Duration::from_secs(300),
        ),
        ("8 core model", core_model, Duration::from_secs(1)),
        (
            "9 poset isomorphisms",
            isomorphisms,
            Duration::from_secs(120),
        ),
        ("10 phi symmetry", phi_symmetry, Duration::from_secs(120)),
        (
            "11 Shi arrangement and parking functions",
            shi,
            Duration::from_secs(300),
        ),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed > budget {
                Err(format!("took {elapsed:.2?}, budget {budget:?}"))
            } else {
                Ok(())
            }
        });
        match outcome {
            Ok(()) => println!("PASS  {name}  ({elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}  ({elapsed:.2?}): {why}");
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
