//! Acceptance suite: the end-to-end guarantees this toolkit is built
//! around, one test per criterion, each with a pinned runtime budget and
//! exact (never floating-point) verdicts. Every test prints a single
//! summary line on success; run with `--nocapture` to see them.

#[path = "../../core/tests/common/mod.rs"]
mod oracle;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use mmp_core::generate::{generate_all, GenerationParams};
use mmp_core::known;
use mmp_core::lattice::{build_lattice, check_superposition, holds_in};
use mmp_core::states::{admits_01_state, admits_state, admits_quantum_states, enumerate_01_states};
use mmp_core::vectors::{realize, verify_realization, RealizeOptions};
use mmp_core::{are_isomorphic, parse_statement, MmpDiagram};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn finish(name: &str, started: Instant, budget: Duration, detail: &str) {
    let elapsed = started.elapsed();
    assert!(
        elapsed <= budget,
        "{name} overran its runtime budget: {elapsed:?} > {budget:?}"
    );
    println!("{name}: PASS — {detail} [{elapsed:.2?} of {budget:?} budget]");
}

fn mmp_binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mmp"))
}

#[test]
fn criterion_1_seven_vector_ks_set_in_dimension_5() {
    let t = Instant::now();
    let d = MmpDiagram::parse(known::KS_7_IN_5D_DIAGRAM).expect("parse 7-vertex diagram");
    assert!(admits_01_state(&d).is_none(), "7-vertex diagram must be noncolorable");
    let v = known::ks_7_in_5d_vectors();
    let report = verify_realization(&d, &v).expect("all seven vectors present");
    assert!(
        report.valid(),
        "within-block inner products must vanish exactly, got {:?}",
        report.violations()
    );
    finish(
        "criterion 1",
        t,
        Duration::from_secs(1),
        "7-vertex diagram is noncolorable and its seven 5-dim integer vectors verify exactly",
    );
}

#[test]
fn criterion_2_eighteen_vector_ks_set_in_dimension_4() {
    let t = Instant::now();
    let d = MmpDiagram::parse(known::KS_18_IN_4D_DIAGRAM).expect("parse 18-9 diagram");
    assert!(admits_01_state(&d).is_none(), "18-9 diagram must be noncolorable");
    let v = known::ks_18_in_4d_vectors();
    let report = verify_realization(&d, &v).expect("all 18 vectors present");
    assert!(report.valid(), "violations: {:?}", report.violations());

    let q = admits_quantum_states(&d);
    assert!(q.admits, "failing pair: {:?}", q.failing_pair);
    // no atom is vacuous, so each of the 18*17 = 306 ordered pairs was
    // decided by its own exact feasibility check
    assert!(q.unreachable_atoms.is_empty());
    assert_eq!(d.vertex_count() * (d.vertex_count() - 1), 306);
    finish(
        "criterion 2",
        t,
        Duration::from_secs(30),
        "18-9 diagram is noncolorable, its 18 vectors verify exactly, \
         and all 306 quantum separation pairs pass",
    );
}

#[test]
fn criterion_3_ten_vertex_five_block_diagram_is_noncolorable() {
    let t = Instant::now();
    let d = MmpDiagram::parse(known::TEN_IN_4D_CANDIDATE_DIAGRAM).expect("parse 10-5 diagram");
    assert!(admits_01_state(&d).is_none());
    finish(
        "criterion 3",
        t,
        Duration::from_secs(1),
        "10-vertex 5-block diagram admits no 0-1 state",
    );
}

#[test]
fn criterion_4_single_blocks_paste_to_boolean_algebras() {
    let t = Instant::now();
    let distributivity =
        parse_statement("x ^ (y v z) = (x^y) v (x^z)").expect("parse distributivity");
    for k in 2..=6 {
        let d = MmpDiagram::new(k, vec![(0..k).collect()]).expect("single block");
        let l = build_lattice(&d).unwrap_or_else(|e| panic!("k={k}: {e}"));
        assert_eq!(l.element_count(), 1 << k, "k={k}");
        let dist = holds_in(&l, &distributivity).expect("within budget");
        assert!(dist.holds, "k={k}: distributivity must hold in a Boolean algebra");
        assert!(
            !check_superposition(&l).holds(),
            "k={k}: Boolean algebras have no superpositions"
        );
    }
    finish(
        "criterion 4",
        t,
        Duration::from_secs(5),
        "single k-blocks give exactly 2^k elements with distributivity and no superposition, k=2..6",
    );
}

#[test]
fn criterion_5_generator_agrees_with_brute_force_enumeration() {
    let t = Instant::now();
    // sweep every choice of distinct 3-blocks once, recording each class
    // key under both connectivity settings
    let max_vertices = 7;
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for a in 0..max_vertices {
        for b in a + 1..max_vertices {
            for c in b + 1..max_vertices {
                subsets.push(vec![a, b, c]);
            }
        }
    }
    let mut checked = 0u64;
    for blocks in 1..=4usize {
        let mut all_classes: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
        let mut connected_classes: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
        let mut chosen = vec![0usize; blocks];
        sweep(&subsets, blocks, 0, &mut chosen, &mut |set| {
            let mut used: Vec<usize> = set.iter().flat_map(|b| b.iter().copied()).collect();
            used.sort_unstable();
            used.dedup();
            let compressed: Vec<Vec<usize>> = set
                .iter()
                .map(|b| b.iter().map(|&v| used.binary_search(&v).expect("used")).collect())
                .collect();
            let d = MmpDiagram::new(used.len(), compressed.clone())
                .expect("distinct 3-blocks always form a diagram");
            assert!(d.validate().passed());
            let key = oracle::brute_canonical_key(used.len(), &compressed);
            if d.is_connected() {
                connected_classes.insert(key.clone());
            }
            all_classes.insert(key);
        });

        for (connected, expected) in
            [(true, &connected_classes), (false, &all_classes)]
        {
            let mut p = GenerationParams::uniform(blocks, 3, max_vertices);
            p.require_connected = connected;
            let got = generate_all(&p).expect("generation in budget");
            let got_keys: BTreeSet<Vec<Vec<usize>>> = got
                .iter()
                .map(|d| oracle::brute_canonical_key(d.vertex_count(), d.blocks()))
                .collect();
            assert_eq!(
                got_keys.len(),
                got.len(),
                "blocks={blocks} connected={connected}: emitted isomorphic duplicates"
            );
            assert_eq!(
                &got_keys, expected,
                "blocks={blocks} connected={connected}: class sets differ"
            );
            checked += got.len() as u64;
        }
    }
    finish(
        "criterion 5",
        t,
        Duration::from_secs(60),
        &format!(
            "catalogues up to 4 blocks of size 3 on ≤7 vertices match brute-force \
             enumerate-then-dedup exactly ({checked} diagrams)"
        ),
    );
}

/// Calls `visit` with every choice of `blocks` distinct subsets, by index.
fn sweep(
    subsets: &[Vec<usize>],
    blocks: usize,
    start: usize,
    chosen: &mut [usize],
    visit: &mut impl FnMut(Vec<&Vec<usize>>),
) {
    let depth = chosen.len() - blocks;
    if blocks == 0 {
        visit(chosen[..depth].iter().map(|&i| &subsets[i]).collect());
        return;
    }
    for i in start..subsets.len() {
        chosen[depth] = i;
        sweep(subsets, blocks - 1, i + 1, chosen, visit);
    }
}

#[test]
fn criterion_6_colorability_matches_exhaustive_assignment_search() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20260824);
    let mut checked = 0;
    let mut attempts = 0u64;
    while checked < 1000 {
        attempts += 1;
        assert!(attempts < 1_000_000, "random diagram sampling stalled");
        let Some(d) = random_diagram(&mut rng) else { continue };
        assert_eq!(
            admits_01_state(&d).is_some(),
            oracle::brute_01_colorable(&d),
            "colorability mismatch on {}",
            d.to_line()
        );
        assert_eq!(
            enumerate_01_states(&d, usize::MAX).states.len(),
            oracle::brute_count_01_states(&d),
            "state count mismatch on {}",
            d.to_line()
        );
        checked += 1;
    }
    finish(
        "criterion 6",
        t,
        Duration::from_secs(60),
        "0-1 colorability and state counts match brute force over all 2^n assignments \
         on 1000 random diagrams with ≤12 vertices",
    );
}

/// A random valid diagram on 2..=12 vertices, or None when the sampled
/// blocks fail the diagram conditions.
fn random_diagram(rng: &mut ChaCha8Rng) -> Option<MmpDiagram> {
    let n = rng.random_range(2..=12);
    let max_block = n.min(4);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut covered = vec![false; n];
    for _ in 0..6 {
        let size = rng.random_range(2..=max_block);
        let mut block: Vec<usize> = rand::seq::index::sample(rng, n, size).into_vec();
        block.sort_unstable();
        if !blocks.contains(&block) {
            for &v in &block {
                covered[v] = true;
            }
            blocks.push(block);
        }
        if covered.iter().all(|&c| c) && rng.random_bool(0.5) {
            break;
        }
    }
    if !covered.iter().all(|&c| c) {
        return None;
    }
    let d = MmpDiagram::new(n, blocks).ok()?;
    d.validate().passed().then_some(d)
}

#[test]
fn criterion_7_realizer_succeeds_for_most_seeds() {
    let t = Instant::now();
    let d = MmpDiagram::parse(known::KS_7_IN_5D_DIAGRAM).expect("parse 7-vertex diagram");
    let opts = RealizeOptions { retries: 100 };
    let mut successes = 0;
    for seed in 0..100 {
        if let Ok(v) = realize(&d, 5, seed, &opts) {
            let report = verify_realization(&d, &v).expect("complete vector set");
            assert!(report.valid(), "seed {seed}: invalid output accepted");
            successes += 1;
        }
    }
    assert!(successes >= 90, "only {successes}/100 seeds realized the 7-vertex diagram");
    finish(
        "criterion 7",
        t,
        Duration::from_secs(120),
        &format!(
            "5-dim realization of the 7-vertex diagram succeeded for {successes}/100 seeds, \
             every output exactly verified"
        ),
    );
}

#[test]
fn criterion_8_pipeline_search_finds_the_seven_vertex_diagram() {
    let t = Instant::now();
    let out = mmp_binary()
        .args([
            "generate",
            "--blocks",
            "5",
            "--block-size",
            "3",
            "--connected",
            "--max-vertices",
            "7",
            "--filter",
            "non-01-colorable",
        ])
        .output()
        .expect("run mmp generate");
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).expect("utf8 catalogue");
    let target = MmpDiagram::parse(known::KS_7_IN_5D_DIAGRAM).expect("parse target");
    let mut emitted = 0;
    let mut found = false;
    for line in text.lines() {
        let d = MmpDiagram::parse(line).expect("emitted diagram parses");
        assert!(
            admits_01_state(&d).is_none(),
            "filter leak: {line} is colorable"
        );
        found |= are_isomorphic(&d, &target);
        emitted += 1;
    }
    assert!(found, "no emitted diagram is isomorphic to the 7-vertex one ({emitted} emitted)");
    finish(
        "criterion 8",
        t,
        Duration::from_secs(600),
        &format!(
            "generate --filter non-01-colorable emits the 7-vertex diagram \
             (among {emitted} noncolorable classes)"
        ),
    );
}

#[test]
fn criterion_9_stateless_search_is_internally_consistent_at_small_scale() {
    let t = Instant::now();
    // the full-size stateless catalogues are out of desk reach; at ≤10
    // atoms the claim shipped here is internal consistency: everything the
    // pipeline emits as stateless really is, and on unfiltered catalogues
    // the simplex verdict agrees with an independent elimination oracle
    let mut emitted_stateless = 0;
    for blocks in [4, 5] {
        let out = mmp_binary()
            .args([
                "generate",
                "--blocks",
                &blocks.to_string(),
                "--block-size",
                "3",
                "--max-vertices",
                "10",
                "--filter",
                "stateless",
            ])
            .output()
            .expect("run mmp generate");
        assert!(out.status.success());
        for line in String::from_utf8_lossy(&out.stdout).lines() {
            let d = MmpDiagram::parse(line).expect("emitted diagram parses");
            assert!(d.validate().passed());
            assert!(admits_state(&d).is_none(), "filter leak: {line} admits a state");
            assert!(!oracle::fm_state_feasible(&d), "oracle disputes statelessness of {line}");
            emitted_stateless += 1;
        }
    }

    let mut agreed = 0;
    for blocks in [3, 4] {
        for connected in [true, false] {
            let mut p = GenerationParams::uniform(blocks, 3, 8);
            p.require_connected = connected;
            for d in generate_all(&p).expect("generation in budget") {
                assert_eq!(
                    admits_state(&d).is_some(),
                    oracle::fm_state_feasible(&d),
                    "state feasibility mismatch on {}",
                    d.to_line()
                );
                agreed += 1;
            }
        }
    }
    finish(
        "criterion 9",
        t,
        Duration::from_secs(600),
        &format!(
            "stateless pipeline is consistent at ≤10 atoms ({emitted_stateless} stateless \
             diagrams emitted; simplex and elimination verdicts agree on {agreed} catalogued \
             diagrams)"
        ),
    );
}
