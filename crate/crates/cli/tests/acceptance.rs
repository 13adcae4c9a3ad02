//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! Run with `cargo test -p abslice-cli --test acceptance`.

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use std::io::Write;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use abslice_core::abslice::{check_obstruction, verify_details, ABSliceInstance, Conclusion};
use abslice_core::bingcell::{allowed_intersection, height_of, model_cell, validate_tree};
use abslice_core::grope::{from_decomp_side, grope_class, grope_complement, GropeTree};
use abslice_core::lambda::{all_witnesses, eval_lambda, side_report, witness_count};
use abslice_core::linkhom::{
    bing_double, catalog, essential_certificate, first_non_vanishing_mu, linking_matrix,
    mu_distinct, CatalogLink, LinkPresentation,
};
use abslice_core::modeltree::{
    dualize, fixture, handle_counts, handle_structure, height, DecompTree, Fixture, Side,
};
use abslice_core::sample;
use abslice_core::word::{magnus_reduced, GenIndex};
use rand::Rng;

const RANDOM_TREES: usize = 10_000;
const TREE_HEIGHT: usize = 5;
const TREE_GENUS: usize = 3;
const COMPLEMENTARITY_BUDGET: Duration = Duration::from_secs(10);
const DOUBLING_BUDGET: Duration = Duration::from_secs(5);
const PIPELINE_BUDGET: Duration = Duration::from_secs(1);
const DUALITY_TREES: usize = 1_000;
const WORD_PAIRS: usize = 10_000;
const WORD_GENERATORS: u32 = 6;
const WORD_LENGTH: usize = 20;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn link(name: &str) -> LinkPresentation {
    catalog(&name.parse::<CatalogLink>().unwrap()).unwrap()
}

fn g(i: u32) -> GenIndex {
    GenIndex::new(i).unwrap()
}

fn population(seed: u64) -> Vec<DecompTree> {
    let mut rng = sample::rng(seed);
    (0..RANDOM_TREES)
        .map(|_| sample::decomp_tree(&mut rng, TREE_HEIGHT, TREE_GENUS))
        .collect()
}

fn complementarity(trees: &[DecompTree]) -> Outcome {
    let start = Instant::now();
    for (k, t) in trees.iter().enumerate() {
        let l = eval_lambda(t).map_err(|e| e.to_string())?;
        ensure(l.i_a + l.i_b == 1, || {
            format!("tree {k}: iA + iB = {}", l.i_a + l.i_b)
        })?;
        let s = eval_lambda(&t.swap_owners()).map_err(|e| e.to_string())?;
        ensure((s.i_a, s.i_b) == (l.i_b, l.i_a), || {
            format!("tree {k}: swap not symmetric")
        })?;
    }
    let took = start.elapsed();
    ensure(took < COMPLEMENTARITY_BUDGET, || format!("took {took:?}"))?;
    Ok(format!("{} trees in {took:.2?}", trees.len()))
}

fn fixture_values() -> Outcome {
    let mut cases: Vec<(Fixture, (u8, u8))> = (1..=4).map(|g| (Fixture::A1B1(g), (0, 1))).collect();
    cases.push((Fixture::A2B2, (0, 1)));
    cases.push((Fixture::A2B2Prime, (1, 0)));
    for (f, want) in &cases {
        let l = eval_lambda(&fixture(*f)).map_err(|e| e.to_string())?;
        ensure((l.i_a, l.i_b) == *want, || {
            format!("{f}: got ({}, {})", l.i_a, l.i_b)
        })?;
    }
    Ok(format!("{} fixtures exact", cases.len()))
}

fn witness_validity(trees: &[DecompTree]) -> Outcome {
    for (k, t) in trees.iter().enumerate() {
        let w = side_report(t).map_err(|e| e.to_string())?.witness;
        let diags = validate_tree(&w);
        ensure(diags.is_empty(), || format!("tree {k}: {}", diags[0]))?;
        ensure(height_of(&w) <= height(t), || {
            format!("tree {k}: witness too tall")
        })?;
    }
    for genus in 1..=6 {
        let n = all_witnesses(&fixture(Fixture::A1B1(genus)))
            .map_err(|e| e.to_string())?
            .count();
        ensure(n == genus, || format!("a1b1:{genus} has {n} witnesses"))?;
    }
    Ok(format!(
        "{} witnesses valid; a1b1:g has g witnesses for g ≤ 6",
        trees.len()
    ))
}

fn disjointness_rule() -> Outcome {
    let two_links = model_cell(3, &[2, 2]).map_err(|e| e.to_string())?;
    let h = two_links.handles();
    ensure(h.len() == 4, || format!("{} handles", h.len()))?;
    let forbidden = [(h[0], h[1]), (h[2], h[3])];
    for &a in &h {
        for &b in &h {
            let ok = allowed_intersection(&two_links, a, b).map_err(|e| e.to_string())?;
            let want = !(forbidden.contains(&(a, b)) || forbidden.contains(&(b, a)));
            ensure(ok == want, || format!("handles {a},{b}: allowed = {ok}"))?;
        }
    }
    Ok("h1⟂h2, h3⟂h4, all other pairs allowed".into())
}

/// Every distinct-index invariant through order n, compared with the oracle.
fn against_oracle(l: &LinkPresentation) -> Result<(), String> {
    let words: Vec<Vec<i32>> = l
        .longitudes()
        .iter()
        .map(|w| w.to_signed().into_iter().map(|v| v as i32).collect())
        .collect();
    let n = l.components() as u32;
    for s in oracle::distinct_sequences(n, n as usize)
        .into_iter()
        .filter(|s| s.len() >= 2)
    {
        let seq: Vec<GenIndex> = s.iter().map(|&i| g(i)).collect();
        let v = mu_distinct(l, &seq).map_err(|e| e.to_string())?;
        let want = oracle::mu(&words, &s);
        ensure(v == want.into(), || {
            format!("μ{s:?}: engine {v}, oracle {want}")
        })?;
    }
    Ok(())
}

fn milnor_engine() -> Outcome {
    for k in 1..=4 {
        let u = link(&format!("unlink:{k}"));
        against_oracle(&u)?;
        ensure(first_non_vanishing_mu(&u).unwrap().is_none(), || {
            format!("unlink:{k} not trivial")
        })?;
    }
    let hopf = link("hopf");
    against_oracle(&hopf)?;
    let v = mu_distinct(&hopf, &[g(2), g(1)]).map_err(|e| e.to_string())?;
    ensure(v.magnitude() == &1u32.into(), || {
        format!("μ_hopf(2,1) = {v}")
    })?;
    let bor = link("borromean");
    against_oracle(&bor)?;
    let v = mu_distinct(&bor, &[g(1), g(2), g(3)]).map_err(|e| e.to_string())?;
    ensure(v.magnitude() == &1u32.into(), || {
        format!("μ_bor(1,2,3) = {v}")
    })?;
    let lk = linking_matrix(&bor);
    ensure(lk.iter().flatten().all(|&x| x == 0), || {
        format!("lk = {lk:?}")
    })?;
    Ok("|μ(hopf;2,1)| = 1, |μ(bor;1,2,3)| = 1, lk(bor) = 0, unlinks vanish".into())
}

fn bing_calibration() -> Outcome {
    let start = Instant::now();
    let d = bing_double(&link("hopf"), g(2)).map_err(|e| e.to_string())?;
    let certs = first_non_vanishing_mu(&d)
        .map_err(|e| e.to_string())?
        .ok_or("double of hopf has no nonzero invariant")?;
    ensure(certs.iter().all(|c| c.order == 3), || {
        format!("order {}", certs[0].order)
    })?;
    ensure(
        certs.iter().all(|c| c.value.magnitude() == &1u32.into()),
        || "value ≠ ±1".into(),
    )?;
    against_oracle(&d)?;

    let du = bing_double(&link("unlink:2"), g(1)).map_err(|e| e.to_string())?;
    against_oracle(&du)?;
    ensure(first_non_vanishing_mu(&du).unwrap().is_none(), || {
        "double of unlink essential".into()
    })?;

    let twice = bing_double(&d, g(1)).map_err(|e| e.to_string())?;
    let c = essential_certificate(&twice)
        .map_err(|e| e.to_string())?
        .ok_or("twice-doubled hopf not certified")?;
    against_oracle(&twice)?;
    let took = start.elapsed();
    ensure(took < DOUBLING_BUDGET, || format!("took {took:?}"))?;
    Ok(format!(
        "order 3 values ±1; twice doubled: {c} (order {}); {took:.2?}",
        c.order
    ))
}

fn pipeline() -> Outcome {
    let start = Instant::now();
    let inst = ABSliceInstance::new(
        link("borromean"),
        vec![
            fixture(Fixture::A1B1(1)),
            fixture(Fixture::A2B2),
            fixture(Fixture::A2B2Prime),
        ],
    )
    .map_err(|e| e.to_string())?;
    let v = check_obstruction(&inst).map_err(|e| e.to_string())?;
    let diags = verify_details(&v, &inst);
    let took = start.elapsed();
    ensure(v.conclusion == Conclusion::Obstructed, || {
        "not obstructed".into()
    })?;
    ensure(diags.is_empty(), || format!("verify: {}", diags[0]))?;
    ensure(v.conclusion.exit_code() == 0, || "exit code".into())?;
    ensure(took < PIPELINE_BUDGET, || format!("took {took:?}"))?;

    let status = Command::new(env!("CARGO_BIN_EXE_abslice"))
        .args(["abslice", "check", "--link", "borromean"])
        .args([
            "--model",
            "a1b1:1",
            "--model",
            "a2b2",
            "--model",
            "a2b2prime",
        ])
        .output()
        .map_err(|e| e.to_string())?
        .status;
    ensure(status.code() == Some(0), || {
        format!("binary exited {status}")
    })?;
    Ok(format!("obstructed, verified, exit 0, {took:.2?}"))
}

fn handle_duality() -> Outcome {
    let mut rng = sample::rng(8);
    let trees = Fixture::all()
        .into_iter()
        .map(fixture)
        .chain((0..DUALITY_TREES).map(|_| sample::decomp_tree(&mut rng, TREE_HEIGHT, TREE_GENUS)));
    let mut n = 0;
    for t in trees {
        let c = handle_counts(&t);
        ensure(
            c.one_handles_a == c.two_handles_b && c.one_handles_b == c.two_handles_a,
            || format!("tree {n}: {c:?}"),
        )?;
        let a = handle_structure(&t, Side::A);
        let b = handle_structure(&t, Side::B);
        ensure(dualize(&a) == b && dualize(&b) == a, || {
            format!("tree {n}: dual mismatch")
        })?;
        ensure(dualize(&dualize(&a)) == a, || {
            format!("tree {n}: not an involution")
        })?;
        n += 1;
    }
    Ok(format!("{n} trees (fixtures + random)"))
}

fn grope_module() -> Outcome {
    let tall = from_decomp_side(&fixture(Fixture::A2B2), Side::A).map_err(|e| e.reason)?;
    ensure(grope_class(&tall) == 3, || {
        format!("class {}", grope_class(&tall))
    })?;
    let c = grope_complement(&GropeTree::bare(1)).map_err(|e| e.to_string())?;
    ensure(c == model_cell(2, &[2]).unwrap(), || {
        "complement of bare surface".into()
    })?;

    // Genus 1 throughout: the complement and the tie-broken witness agree.
    // Higher genus: the witness Bing-doubles a single pair while the
    // complement keeps every pair, so compare with the tallest witness.
    let mut rng = sample::rng(9);
    let (mut exact, mut tallest, mut shorter) = (0, 0, 0);
    for k in 0..2000 {
        let genus = if k % 2 == 0 {
            1
        } else {
            rng.gen_range(2..=TREE_GENUS)
        };
        let t = sample::pure_grope_tree(&mut rng, Side::A, 4, genus);
        let grope = from_decomp_side(&t, Side::A).map_err(|e| e.reason)?;
        let ch = height_of(&grope_complement(&grope).map_err(|e| e.to_string())?);
        let wh = height_of(&side_report(&t).map_err(|e| e.to_string())?.witness);
        if genus == 1 {
            ensure(ch == wh, || {
                format!("genus 1 tree {k}: complement {ch}, witness {wh}")
            })?;
            exact += 1;
        } else if witness_count(&t).unwrap() <= 512u32.into() {
            let best = all_witnesses(&t)
                .unwrap()
                .map(|w| height_of(&w))
                .max()
                .unwrap();
            ensure(ch == best, || {
                format!("tree {k}: complement {ch}, tallest witness {best}")
            })?;
            shorter += usize::from(wh < ch);
            tallest += 1;
        }
    }
    Ok(format!(
        "a2b2 A-side class 3; bare complement = modelCell(2,[2]); heights equal on {exact} genus-1 trees, \
         and on {tallest} higher-genus trees against the tallest witness (tie-broken one shorter on {shorter})"
    ))
}

fn magnus_homomorphism() -> Outcome {
    let mut rng = sample::rng(10);
    let start = Instant::now();
    for k in 0..WORD_PAIRS {
        let n = rng.gen_range(1..=WORD_GENERATORS);
        let u = sample::word(&mut rng, n, WORD_LENGTH);
        let v = sample::word(&mut rng, n, WORD_LENGTH);
        let uv = magnus_reduced(&u.mul(&v), n as usize).map_err(|e| e.to_string())?;
        let prod = magnus_reduced(&u, n as usize)
            .unwrap()
            .mul(&magnus_reduced(&v, n as usize).unwrap());
        ensure(uv == prod, || {
            format!("pair {k}: M({u} · {v}) ≠ M({u})M({v})")
        })?;
        for (m, _) in uv.terms() {
            let idx: Vec<u32> = m.indices().map(GenIndex::get).collect();
            let mut d = idx.clone();
            d.sort_unstable();
            d.dedup();
            ensure(d.len() == idx.len(), || {
                format!("pair {k}: term {m} repeats an index")
            })?;
        }
    }
    Ok(format!(
        "{WORD_PAIRS} pairs, 0 violations, {:.2?}",
        start.elapsed()
    ))
}

fn main() -> ExitCode {
    let trees = population(1);
    let criteria: Vec<Criterion> = vec![
        (
            "complementarity and owner swap",
            Box::new(|| complementarity(&trees)),
        ),
        ("fixture invariants", Box::new(fixture_values)),
        ("witness validity", Box::new(|| witness_validity(&trees))),
        (
            "disjointness rule on the height-one cell",
            Box::new(disjointness_rule),
        ),
        ("Milnor engine against the oracle", Box::new(milnor_engine)),
        ("Bing-doubling calibration", Box::new(bing_calibration)),
        ("Borromean obstruction pipeline", Box::new(pipeline)),
        ("handle duality", Box::new(handle_duality)),
        ("grope class and complement", Box::new(grope_module)),
        (
            "Magnus homomorphism and square-free terms",
            Box::new(magnus_homomorphism),
        ),
    ];
    let mut out = std::io::stdout().lock();
    writeln!(out, "acceptance (seed {})", sample::seed(1)).unwrap();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => writeln!(out, "PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                writeln!(out, "FAIL {:>2} {name}: {why}", i + 1)
            }
        }
        .unwrap();
    }
    writeln!(
        out,
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    )
    .unwrap();
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
