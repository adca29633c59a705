//! Acceptance criteria, one line of output each. Runs without the libtest
//! harness so that the report is always shown.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use gml::completion::{Completion, Element};
use gml::graph::{
    approx_contains, approx_interpret, check_equation, extract_witness_subpair, member, Membership, Outcome, Verdict,
};
use gml::minimal::{encode_pair, enumerate_pair, relocate, relocation, restriction_property_check, search_counterexample};
use gml::pair::{Atom, PartialPair};
use gml::semantics::{interpret, omega_characterization, Environment};
use gml::term::{combinators, parse, Term};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use common::*;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: gml::Error) -> String {
    e.to_string()
}

fn oracle_equivalence() -> Check {
    let mut pairs = vec![PartialPair::empty()];
    pairs.extend(all_pairs(1, 2));
    pairs.extend(all_pairs(2, 2));
    let terms = closed_terms_up_to(7);
    for p in &pairs {
        for t in &terms {
            let fast = interpret(t, p, &Environment::new()).map_err(err)?;
            let slow = naive_interpret(t, p, &[]);
            ensure(fast == slow, || format!("{t} on {p:?}: {fast:?} vs {slow:?}"))?;
        }
    }
    Ok(format!("{} pairs x {} closed terms", pairs.len(), terms.len()))
}

fn omega_containment() -> Check {
    let mut rng = StdRng::seed_from_u64(2);
    let omega = combinators::omega();
    let mut inhabited = 0;
    for i in 0..100 {
        let n = rng.gen_range(1..=3);
        let p = random_pair(&mut rng, n, 3);
        let c = Completion::new(p.clone());
        for k in 0..=4 {
            let set = approx_interpret(&omega, &c, &Environment::new(), k).map_err(err)?;
            ensure(set.iter().all(Element::is_base), || format!("pair {i}: non-atom in Omega at rank {k}"))?;
            if k == 0 {
                let expected: BTreeSet<Element> = omega_characterization(&p).into_iter().map(Element::base).collect();
                ensure(set == expected, || format!("pair {i}: rank 0 differs from the characterisation"))?;
            }
            if k == 4 && !set.is_empty() {
                inhabited += 1;
            }
        }
    }
    Ok(format!("100 pairs, ranks 0..=4, {inhabited} with Omega non-empty"))
}

/// Completion levels built directly as sets of trees.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Tree {
    Base(u128),
    Pair(BTreeSet<Tree>, Box<Tree>),
}

fn tree_levels(p: &PartialPair, k: u32) -> usize {
    let base: BTreeSet<Tree> = p.atoms().iter().map(|a| Tree::Base(a.0)).collect();
    let mut level = base.clone();
    for _ in 0..k {
        let items: Vec<Tree> = level.iter().cloned().collect();
        let mut next = base.clone();
        for mask in 0u64..(1 << items.len()) {
            let args: BTreeSet<Tree> = (0..items.len()).filter(|i| mask >> i & 1 == 1).map(|i| items[i].clone()).collect();
            for res in &items {
                let as_atoms: Option<Vec<Atom>> = args
                    .iter()
                    .chain([res])
                    .map(|t| match t {
                        Tree::Base(a) => Some(Atom(*a)),
                        Tree::Pair(..) => None,
                    })
                    .collect();
                let coded = as_atoms.and_then(|mut v| {
                    let r = v.pop().unwrap();
                    p.lookup(&gml::pair::Key::new(v, r))
                });
                if coded.is_none() {
                    next.insert(Tree::Pair(args.clone(), Box::new(res.clone())));
                }
            }
        }
        level = next;
    }
    level.len()
}

fn cardinalities() -> Check {
    let free1 = Completion::new(PartialPair::free(1));
    let coded = Completion::new(p1());
    let cases = [(&free1, 1, 3), (&free1, 2, 25), (&coded, 1, 2)];
    for (c, k, expected) in cases {
        let oracle = tree_levels(c.pair(), k);
        let listed = c.elements_up_to(k).map_err(err)?.len();
        let counted = c.counts(k)[k as usize];
        ensure(oracle == expected && listed == expected && counted == Some(expected as u128), || {
            format!("rank {k}: oracle {oracle}, listed {listed}, counted {counted:?}, expected {expected}")
        })?;
    }
    Ok("|E_1| = 3, |E_2| = 25 on one free atom; |E_1| = 2 with the coded triple".into())
}

fn monotonicity() -> Check {
    let mut rng = StdRng::seed_from_u64(4);
    for i in 0..1000 {
        let n = rng.gen_range(1..=3);
        let b = random_pair(&mut rng, n, 3);
        let a = random_subpair(&mut rng, &b);
        let mut sigma = Environment::new();
        let mut rho = Environment::new();
        for x in ["x", "y"] {
            let s: BTreeSet<Atom> = b.atoms().iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            let r: BTreeSet<Atom> = s.iter().copied().filter(|x| a.contains(*x) && rng.gen_bool(0.7)).collect();
            sigma.insert(x, s);
            rho.insert(x, r);
        }
        let size = rng.gen_range(1..=8);
        let t = random_term(&mut rng, size, &["x", "y"]);
        let small = interpret(&t, &a, &rho).map_err(err)?;
        let large = interpret(&t, &b, &sigma).map_err(err)?;
        ensure(small.is_subset(&large), || format!("sample {i}: {t} not monotone"))?;
    }
    Ok("1000 samples".into())
}

fn witness_round_trip() -> Check {
    let mut rng = StdRng::seed_from_u64(5);
    let terms: Vec<Term> = closed_terms_up_to(6).into_iter().filter(|t| matches!(t, Term::Abs(..))).collect();
    let mut pairs = all_pairs(1, 2);
    pairs.extend(all_pairs(2, 2));
    let mut done = 0;
    let mut tries = 0;
    while done < 200 {
        tries += 1;
        ensure(tries < 20_000, || format!("only {done} cases found"))?;
        let p = pairs.choose(&mut rng).unwrap().clone();
        let k = if p.len() == 1 { rng.gen_range(1..=2) } else { 1 };
        let c = Completion::new(p);
        let t = terms.choose(&mut rng).unwrap();
        let env = Environment::new();
        let set = match approx_interpret(t, &c, &env, k) {
            Ok(s) => s,
            Err(gml::Error::CeilingExceeded { .. } | gml::Error::EvaluationBudget(_)) => continue,
            Err(e) => return Err(err(e)),
        };
        let Some(e) = set.iter().collect::<Vec<_>>().choose(&mut rng).map(|e| (*e).clone()) else {
            continue;
        };
        let Membership::Found(r) = member(t, &c, &env, &e, k).map_err(err)? else {
            return Err(format!("{e} listed but not found"));
        };
        let w = extract_witness_subpair(t, &c, &env, &e, r).map_err(err)?;
        ensure(w.is_below_completion(&c), || format!("{t}, {e}: subpair not inside the completion"))?;
        ensure(w.verify(t, &env), || format!("{t}, {e}: not re-derived"))?;
        ensure(w.element_of(w.atom) == Some(&e), || format!("{t}, {e}: wrong atom"))?;
        done += 1;
    }
    Ok(format!("200 cases ({tries} draws)"))
}

/// The least member of `approx(m, k_m)` missing from `approx(n, k_n)`.
fn least_gap(m: &Term, n: &Term, c: &Completion, k_m: u32, k_n: u32) -> Result<Option<Element>, String> {
    let env = Environment::new();
    for e in approx_interpret(m, c, &env, k_m).map_err(err)? {
        if !approx_contains(n, c, &env, k_n, &e).map_err(err)? {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

fn check_separation(v: &Verdict, c: &Completion) -> Result<(), String> {
    let Outcome::FailsWithEvidence { witness, member_rank, witness_subpair, .. } = &v.outcome else {
        return Err(format!("{} does not fail", v.inequation.lhs));
    };
    ensure(*member_rank <= 2, || format!("member rank {member_rank}"))?;
    let least = least_gap(&v.inequation.lhs, &v.inequation.rhs, c, 2, 4)?;
    ensure(least.as_ref() == Some(witness), || format!("witness {witness} is not the least ({least:?})"))?;
    ensure(witness_subpair.verify(&v.inequation.lhs, &Environment::new()), || "witness subpair does not verify".into())
}

fn separation() -> Check {
    let c = Completion::new(p1());
    let v = check_equation(&combinators::truth(), &combinators::falsity(), &c, 2, 4).map_err(err)?;
    ensure(v.kind() == "fails_with_evidence", || format!("T = F: {}", v.kind()))?;
    check_separation(&v.forward, &c)?;
    let shown = v.forward.witness().unwrap().render(c.pair());
    let free1 = Completion::new(PartialPair::free(1));
    let v = check_equation(&combinators::identity(), &parse("\\x y. x y").unwrap(), &free1, 2, 4).map_err(err)?;
    ensure(v.kind() == "fails_with_evidence", || format!("I = \\xy.xy: {}", v.kind()))?;
    Ok(format!("T vs F witness {shown}; I vs \\xy.xy fails"))
}

const BETA_EQUAL: [(&str, &str); 20] = [
    ("I I", "I"),
    ("I I I", "I"),
    ("I T", "T"),
    ("I F", "F"),
    ("T I I", "I"),
    ("F I I", "I"),
    ("T I", "F"),
    ("\\a b. T a b", "T"),
    ("\\a b. F a b", "F"),
    ("(\\x. x x) I", "I"),
    ("\\a. I a", "I"),
    ("T I Omega", "I"),
    ("F Omega I", "I"),
    ("\\a. T a a", "I"),
    ("(\\f x. f (f x)) I", "I"),
    ("(\\x y. y x) I T", "\\y. I"),
    ("(\\x y z. x z (y z)) T T", "I"),
    ("I (\\x. x x)", "\\x. x x"),
    ("\\z. I z z", "\\z. z z"),
    ("(\\x y. x y) I", "I"),
];

/// Least slack `s ≤ 3` with `approx(m, k) ⊆ approx(n, k + s)`.
fn slack(m: &Term, n: &Term, c: &Completion, k: u32) -> Result<Option<u32>, String> {
    let env = Environment::new();
    let set = approx_interpret(m, c, &env, k).map_err(err)?;
    'slack: for s in 0..=3 {
        for e in &set {
            if !approx_contains(n, c, &env, k + s, e).map_err(err)? {
                continue 'slack;
            }
        }
        return Ok(Some(s));
    }
    Ok(None)
}

fn beta_soundness() -> Check {
    let c = Completion::new(PartialPair::free(1));
    let mut worst = 0;
    for (lhs, rhs) in BETA_EQUAL {
        let (m, n) = (parse(lhs).unwrap(), parse(rhs).unwrap());
        for k in 0..=2 {
            for (a, b) in [(&m, &n), (&n, &m)] {
                match slack(a, b, &c, k)? {
                    Some(s) => worst = worst.max(s),
                    None => return Err(format!("{a} vs {b} at rank {k}: slack above 3")),
                }
            }
        }
    }
    Ok(format!("20 pairs, both directions, k <= 2, largest slack {worst}"))
}

fn minimal_model() -> Check {
    for k in 0..=500 {
        ensure(encode_pair(&enumerate_pair(k)).map_err(err)? == k, || format!("numeration round trip fails at {k}"))?;
    }
    let carriers: Vec<BTreeSet<Atom>> = (0..=50).map(|k| relocate(k).map(|p| p.atoms().clone())).collect::<Result<_, _>>().map_err(err)?;
    for i in 0..carriers.len() {
        for j in i + 1..carriers.len() {
            ensure(carriers[i].is_disjoint(&carriers[j]), || format!("P_{i} and P_{j} overlap"))?;
        }
    }
    for k in 0..=50 {
        let f = relocation(k).map_err(err)?;
        let (n, p) = (enumerate_pair(k), relocate(k).map_err(err)?);
        let back = f.inverse().ok_or_else(|| format!("relocation {k} not injective"))?;
        ensure(f.is_morphism(&n, &p) && back.is_morphism(&p, &n), || format!("relocation {k} is not an isomorphism"))?;
    }
    let (found, v) = search_counterexample(&combinators::truth(), &combinators::falsity(), 50, 2, 4)
        .map_err(err)?
        .ok_or("no component separates T and F")?;
    check_separation(&v, &Completion::new(relocate(found).map_err(err)?))?;
    let qs = [combinators::identity(), combinators::truth(), combinators::falsity(), combinators::omega()];
    for k in 1..=5 {
        for q in &qs {
            for r in 0..=2 {
                ensure(restriction_property_check(q, k, r).map_err(err)?, || format!("restriction fails for {q} on P_{k} at rank {r}"))?;
            }
        }
    }
    Ok(format!("round trip k <= 500, disjoint k <= 50, T/F separated by P_{found}, restriction on P_1..P_5"))
}

/// A random element of rank at most 2, biased towards members of the
/// interpretations of I, T, F.
fn random_rank2(rng: &mut StdRng, c: &Completion, level1: &[Element]) -> Element {
    let res = level1.choose(rng).unwrap().clone();
    let count = rng.gen_range(0..=3);
    let mut args: Vec<Element> = level1.choose_multiple(rng, count).cloned().collect();
    if rng.gen_bool(0.5) {
        args.push(res.clone());
    }
    if let Some((_, inner)) = res.as_pair() {
        if rng.gen_bool(0.5) {
            args.push(inner.clone());
        }
    }
    args.sort();
    args.dedup();
    c.apply_coding(&args, &res)
}

fn orbit_invariance() -> Check {
    let mut rng = StdRng::seed_from_u64(9);
    let terms = [combinators::identity(), combinators::truth(), combinators::falsity(), combinators::omega()];
    let env = Environment::new();
    let mut pairs: Vec<PartialPair> = all_pairs(2, 2).into_iter().filter(|p| p.automorphisms().unwrap().len() > 1).collect();
    let exhaustive = pairs.len();
    while pairs.len() < 50 {
        let p = random_pair(&mut rng, 3, 3);
        if p.automorphisms().unwrap().len() > 1 && !pairs.contains(&p) {
            pairs.push(p);
        }
    }
    let (mut sampled, mut members) = (0, 0);
    for (i, p) in pairs.iter().enumerate() {
        let c = Completion::new(p.clone());
        let auts = p.automorphisms().map_err(err)?;
        let full_rank = if i < exhaustive { 2 } else { 1 };
        for t in &terms {
            for k in 0..=full_rank {
                let set = approx_interpret(t, &c, &env, k).map_err(err)?;
                for theta in &auts {
                    let image: BTreeSet<Element> = set.iter().map(|e| c.lift(theta, e)).collect::<Result<_, _>>().map_err(err)?;
                    ensure(image == set, || format!("pair {i}: {t} at rank {k} moved by an automorphism"))?;
                }
            }
            if full_rank < 2 {
                let level1: Vec<Element> = c.elements_up_to(1).map_err(err)?.into_iter().collect();
                for _ in 0..100 {
                    let e = random_rank2(&mut rng, &c, &level1);
                    let inside = approx_contains(t, &c, &env, 2, &e).map_err(err)?;
                    for theta in &auts {
                        let moved = c.lift(theta, &e).map_err(err)?;
                        ensure(approx_contains(t, &c, &env, 2, &moved).map_err(err)? == inside, || {
                            format!("pair {i}: {t} at rank 2 not invariant at {e}")
                        })?;
                    }
                    sampled += 1;
                    members += inside as usize;
                }
            }
        }
    }
    Ok(format!(
        "{exhaustive} two-atom pairs exhaustive at k <= 2; {} three-atom pairs exhaustive at k <= 1, {sampled} sampled rank-2 elements ({members} members)",
        pairs.len() - exhaustive
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("oracle equivalence", oracle_equivalence),
        ("omega containment", omega_containment),
        ("completion cardinalities", cardinalities),
        ("monotonicity", monotonicity),
        ("witness round trip", witness_round_trip),
        ("separation", separation),
        ("beta soundness at budget", beta_soundness),
        ("minimal model plumbing", minimal_model),
        ("orbit invariance", orbit_invariance),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
