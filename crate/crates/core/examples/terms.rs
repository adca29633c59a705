//! Parsing, normalisation and the Gödel numbering of closed terms.

use gml::term::{enumerate_closed_terms, godel_decode, godel_encode, normalize, parse};

fn main() -> gml::Result<()> {
    for text in ["(\\x y z. x z (y z)) T T", "T I Omega", "Omega"] {
        let t = parse(text)?;
        let r = normalize(&t, 100);
        println!("{t}\n  -> {} ({:?} after {} steps)", r.term, r.status, r.steps);
    }

    println!("\nfirst closed terms:");
    for t in enumerate_closed_terms(8) {
        let n = godel_encode(&t);
        assert_eq!(godel_decode(&n), t);
        println!("  #{n:<6} {t}");
    }
    Ok(())
}
