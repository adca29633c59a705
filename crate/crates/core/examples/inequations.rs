//! Bounded checks of (in)equations with witnesses.

use gml::completion::Completion;
use gml::graph::{check_equation, check_inequation, member, Outcome};
use gml::pair::PartialPair;
use gml::semantics::Environment;
use gml::term::parse;

fn main() -> gml::Result<()> {
    let p1 = Completion::new(PartialPair::build([0], [(vec![0], 0, 0)])?);
    let t = parse("T")?;
    let f = parse("F")?;

    let v = check_inequation(&t, &f, &p1, 2, 4)?;
    if let Outcome::FailsWithEvidence { witness, member_rank, nonmember_bound, witness_subpair } = &v.outcome {
        println!("T <= F fails: {witness} enters T at rank {member_rank}, absent from F up to {nonmember_bound}");
        println!("re-derived in a {}-atom subpair: {}", witness_subpair.pair.len(), witness_subpair.verify(&t, &Environment::new()));
    }

    let e = p1.parse_element("({0},({},0))")?;
    println!("membership in F: {:?}", member(&f, &p1, &Environment::new(), &e, 4)?);

    let free1 = Completion::new(PartialPair::free(1));
    for (m, n) in [("I I", "I"), ("I", "\\x y. x y")] {
        let v = check_equation(&parse(m)?, &parse(n)?, &free1, 2, 5)?;
        println!("{m} = {n}: {}", v.kind());
    }
    println!("{}", v.to_json(p1.pair()));
    Ok(())
}
