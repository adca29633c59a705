//! A bijection between the naturals and α-equivalence classes of λ-terms.
//!
//! Terms are first put in pure de Bruijn form: a variable under `d` binders
//! with index `i < d` is bound, and `i ≥ d` stands for the free identifier
//! number `i - d` (see [`identifier_index`]). The code of a de Bruijn term is
//!
//! ```text
//! code(Var i)    = 3·i
//! code(Abs t)    = 3·code(t) + 1
//! code(App t u)  = 3·⟨code(t), code(u)⟩ + 2
//! ```
//!
//! where `⟨·,·⟩` is the Cantor pairing. Every natural decomposes uniquely by
//! its residue mod 3 into strictly smaller codes, so decoding is total and
//! the two maps are mutually inverse. `decode(0)` is the free variable `a`,
//! `decode(1)` is `\x0.x0` and `decode(2)` is `a a`.
//!
//! Free identifiers are numbered by length, then lexicographically over
//! `a-z A-Z 0-9 _`, skipping the combinator aliases `I`, `T`, `F`, `Omega`
//! which never parse as variables.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::parse::ALIASES;
use super::syntax::{fresh_name, Term};
use crate::natural::{cantor_pair, cantor_unpair};

const ALPHABET: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_";
const LEADING: u32 = 52;
const TRAILING: u32 = 63;

fn raw_identifier_index(name: &str) -> BigUint {
    let bytes = name.as_bytes();
    let mut offset = BigUint::zero();
    let mut block = BigUint::from(LEADING);
    for _ in 1..bytes.len() {
        offset += &block;
        block *= TRAILING;
    }
    let digit = |c: u8| ALPHABET.iter().position(|&a| a == c).expect("identifier character") as u32;
    let mut value = BigUint::from(digit(bytes[0]));
    for &c in &bytes[1..] {
        value = value * TRAILING + digit(c);
    }
    offset + value
}

fn raw_identifier(mut n: BigUint) -> String {
    let mut len = 1u32;
    let mut block = BigUint::from(LEADING);
    while n >= block {
        n -= &block;
        block *= TRAILING;
        len += 1;
    }
    let mut digits = Vec::with_capacity(len as usize);
    for _ in 1..len {
        let d = (&n % TRAILING).to_usize().unwrap();
        digits.push(ALPHABET[d]);
        n /= TRAILING;
    }
    digits.push(ALPHABET[n.to_usize().unwrap()]);
    digits.reverse();
    String::from_utf8(digits).unwrap()
}

fn reserved() -> &'static [BigUint] {
    static RESERVED: OnceLock<Vec<BigUint>> = OnceLock::new();
    RESERVED.get_or_init(|| {
        let mut r: Vec<BigUint> = ALIASES.iter().map(|a| raw_identifier_index(a)).collect();
        r.sort();
        r
    })
}

/// Position of an identifier in the numeration of non-alias identifiers.
pub fn identifier_index(name: &str) -> BigUint {
    let raw = raw_identifier_index(name);
    let below = reserved().iter().filter(|r| **r < raw).count();
    raw - below
}

pub fn identifier(n: &BigUint) -> String {
    let mut raw = n.clone();
    for r in reserved() {
        if *r <= raw {
            raw += 1u32;
        }
    }
    raw_identifier(raw)
}

enum DeBruijn {
    Var(BigUint),
    Abs(Box<DeBruijn>),
    App(Box<DeBruijn>, Box<DeBruijn>),
}

fn to_de_bruijn(t: &Term, ctx: &mut Vec<String>) -> DeBruijn {
    match t {
        Term::Var(x) => match ctx.iter().rev().position(|b| b == x) {
            Some(i) => DeBruijn::Var(BigUint::from(i)),
            None => DeBruijn::Var(identifier_index(x) + ctx.len()),
        },
        Term::Abs(x, b) => {
            ctx.push(x.clone());
            let body = to_de_bruijn(b, ctx);
            ctx.pop();
            DeBruijn::Abs(Box::new(body))
        }
        Term::App(f, a) => DeBruijn::App(Box::new(to_de_bruijn(f, ctx)), Box::new(to_de_bruijn(a, ctx))),
    }
}

fn code(t: &DeBruijn) -> BigUint {
    match t {
        DeBruijn::Var(i) => i * 3u32,
        DeBruijn::Abs(b) => code(b) * 3u32 + 1u32,
        DeBruijn::App(f, a) => cantor_pair(&code(f), &code(a)) * 3u32 + 2u32,
    }
}

fn from_code(n: &BigUint) -> DeBruijn {
    let q = n / 3u32;
    match (n % 3u32).to_u8().unwrap() {
        0 => DeBruijn::Var(q),
        1 => DeBruijn::Abs(Box::new(from_code(&q))),
        _ => {
            let (f, a) = cantor_unpair(&q);
            DeBruijn::App(Box::new(from_code(&f)), Box::new(from_code(&a)))
        }
    }
}

fn free_identifiers(t: &DeBruijn, depth: usize, out: &mut Vec<String>) {
    match t {
        DeBruijn::Var(i) => {
            if *i >= BigUint::from(depth) {
                out.push(identifier(&(i - depth)));
            }
        }
        DeBruijn::Abs(b) => free_identifiers(b, depth + 1, out),
        DeBruijn::App(f, a) => {
            free_identifiers(f, depth, out);
            free_identifiers(a, depth, out);
        }
    }
}

fn to_named(t: &DeBruijn, binders: &[String], depth: usize) -> Term {
    match t {
        DeBruijn::Var(i) => match i.to_usize().filter(|&i| i < depth) {
            Some(i) => Term::Var(binders[depth - 1 - i].clone()),
            None => Term::Var(identifier(&(i - depth))),
        },
        DeBruijn::Abs(b) => Term::abs(binders[depth].clone(), to_named(b, binders, depth + 1)),
        DeBruijn::App(f, a) => Term::app(to_named(f, binders, depth), to_named(a, binders, depth)),
    }
}

fn depth_of(t: &DeBruijn) -> usize {
    match t {
        DeBruijn::Var(_) => 0,
        DeBruijn::Abs(b) => 1 + depth_of(b),
        DeBruijn::App(f, a) => depth_of(f).max(depth_of(a)),
    }
}

pub fn godel_encode(t: &Term) -> BigUint {
    code(&to_de_bruijn(t, &mut Vec::new()))
}

/// The representative of code `n`: binders at depth `d` are named by the
/// `d`-th fresh name `x<i>` not clashing with a free identifier.
pub fn godel_decode(n: &BigUint) -> Term {
    let db = from_code(n);
    let mut free = Vec::new();
    free_identifiers(&db, 0, &mut free);
    let binders: Vec<String> = (0..)
        .map(fresh_name)
        .filter(|x| !free.contains(x))
        .take(depth_of(&db))
        .collect();
    to_named(&db, &binders, 0)
}

/// The first `limit` closed terms in code order.
pub fn enumerate_closed_terms(limit: usize) -> Vec<Term> {
    let mut out = Vec::with_capacity(limit);
    let mut n = BigUint::zero();
    while out.len() < limit {
        let t = godel_decode(&n);
        if t.is_closed() {
            out.push(t);
        }
        n += 1u32;
    }
    out
}
