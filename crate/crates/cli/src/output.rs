//! Text and JSON rendering. JSON encodes a polynomial as a list of
//! monomials in display order (leading term first), each monomial a list of
//! `[name, exponent]` pairs in the global variable order, so output is
//! canonical and diff-friendly.

use clap::ValueEnum;
use serde_json::{json, Value};

use quadric_core::{Polynomial, RingContext, RingFamily};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// The CLI spelling of a ring family.
pub fn family_code(family: RingFamily) -> &'static str {
    match family {
        RingFamily::BGOEven | RingFamily::BGOOdd => "go",
        RingFamily::BO | RingFamily::BOHat => "o",
        RingFamily::BGL => "gl",
        RingFamily::TodaA => "toda",
    }
}

pub fn ring_value(ctx: &Arc<RingContext>) -> Value {
    json!({ "family": family_code(ctx.family()), "rank": ctx.rank() })
}

pub fn poly_value(p: &Polynomial) -> Value {
    let monos: Vec<Value> = p
        .terms()
        .rev()
        .map(|m| {
            let pairs: Vec<Value> = m
                .factors()
                .iter()
                .map(|&(key, exp)| json!([key.name(), exp]))
                .collect();
            Value::Array(pairs)
        })
        .collect();
    Value::Array(monos)
}

pub fn print_poly(p: &Polynomial, format: Format) {
    match format {
        Format::Text => println!("{p}"),
        Format::Json => println!(
            "{}",
            json!({ "ring": ring_value(p.ctx()), "result": poly_value(p) })
        ),
    }
}

pub fn print_bool(ctx: &Arc<RingContext>, field: &str, value: bool, format: Format) {
    match format {
        Format::Text => println!("{value}"),
        Format::Json => println!("{}", json!({ "ring": ring_value(ctx), field: value })),
    }
}

pub fn print_labeled(ctx: &Arc<RingContext>, entries: &[(String, Polynomial)], format: Format) {
    match format {
        Format::Text => {
            for (label, value) in entries {
                println!("{label} = {value}");
            }
        }
        Format::Json => {
            let list: Vec<Value> = entries
                .iter()
                .map(|(label, value)| json!({ "label": label, "terms": poly_value(value) }))
                .collect();
            println!(
                "{}",
                json!({ "ring": ring_value(ctx), "generators": list })
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use quadric_core::VarKey;

    #[test]
    fn json_polynomials_list_leading_terms_first() {
        let ctx = RingContext::new(RingFamily::BGOEven, 4).unwrap();
        let p = Polynomial::monomial(&ctx, &[(VarKey::a(1), 2)])
            .unwrap()
            .checked_add(&Polynomial::monomial(&ctx, &[(VarKey::b(4), 1), (VarKey::a(1), 1)]).unwrap())
            .unwrap();
        let value = json!({ "ring": ring_value(p.ctx()), "result": poly_value(&p) });
        // serde_json serializes object keys in sorted order, deterministically
        assert_eq!(
            value.to_string(),
            r#"{"result":[[["a1",1],["b4",1]],[["a1",2]]],"ring":{"family":"go","rank":4}}"#
        );
    }

    #[test]
    fn zero_renders_as_an_empty_list() {
        let ctx = RingContext::new(RingFamily::BO, 2).unwrap();
        assert_eq!(poly_value(&Polynomial::zero(&ctx)).to_string(), "[]");
        assert_eq!(
            poly_value(&Polynomial::one(&ctx)).to_string(),
            "[[]]",
            "the unit is one empty monomial"
        );
    }
}
