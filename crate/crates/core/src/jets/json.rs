//! JSON form of jets:
//! `{"n":…, "order":…, "kind":…, "components":{"l,i,j":{"e1,…,en":"p/q",…},…}}`
//! with 1-based component indices and exponent-list monomial keys.

use serde_json::{json, Map, Value};

use super::field::{Jet3, JetKind};
use super::monomial::MultiIndex;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational};

pub fn jet_to_json<K: JetKind>(g: &Jet3<Rational, K>) -> Value {
    let mut components = Map::new();
    for (l, i, j) in g.index_triples() {
        let terms: Map<String, Value> = g
            .component(l, i, j)
            .terms()
            .map(|(m, c)| (m.key(), Value::String(format_rational(c))))
            .collect();
        components.insert(format!("{},{},{}", l + 1, i + 1, j + 1), Value::Object(terms));
    }
    json!({
        "n": g.n(),
        "order": g.order(),
        "kind": K::NAME,
        "components": components,
    })
}

pub fn jet_from_json<K: JetKind>(v: &Value) -> Result<Jet3<Rational, K>> {
    let bad = |msg: &str| Error::Parse(msg.to_string());
    let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("missing n"))? as usize;
    let order = v.get("order").and_then(Value::as_u64).ok_or_else(|| bad("missing order"))? as usize;
    if let Some(kind) = v.get("kind").and_then(Value::as_str) {
        if kind != K::NAME {
            return Err(bad(&format!("expected kind {}, found {kind}", K::NAME)));
        }
    }
    let mut g = Jet3::<Rational, K>::zero(n, order)?;
    let comps = v.get("components").and_then(Value::as_object).ok_or_else(|| bad("missing components"))?;
    for (key, terms) in comps {
        let idx: Vec<usize> = key
            .split(',')
            .map(|s| s.trim().parse::<usize>().ok().filter(|&x| (1..=n).contains(&x)))
            .collect::<Option<_>>()
            .ok_or_else(|| bad(&format!("bad component key {key}")))?;
        let [l, i, j] = idx[..] else {
            return Err(bad(&format!("bad component key {key}")));
        };
        let terms = terms.as_object().ok_or_else(|| bad("component must be an object"))?;
        let mut p = Polynomial::zero(n, order)?;
        for (mkey, c) in terms {
            let m = MultiIndex::parse_key(mkey)
                .filter(|m| m.n() == n && m.degree() <= order)
                .ok_or_else(|| bad(&format!("bad monomial key {mkey}")))?;
            let c = c.as_str().and_then(parse_rational).ok_or_else(|| bad("bad coefficient"))?;
            p.add_term(m, c);
        }
        *g.component_mut(l - 1, i - 1, j - 1) = p;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::{random_connection_jet, Connection, Tensor};
    use proptest::prelude::*;

    #[test]
    fn layout() {
        let mut g = Jet3::<Rational, Connection>::zero(2, 1).unwrap();
        g.component_mut(0, 0, 1).add_term(MultiIndex::unit(2, 1), Rational::new(3.into(), 2.into()));
        let v = jet_to_json(&g);
        assert_eq!(v["components"]["1,1,2"]["0,1"], "3/2");
        assert_eq!(v["n"], 2);
        assert_eq!(v["kind"], "connection");
        assert!(jet_from_json::<Tensor>(&v).is_err());
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..4, k in 0usize..3, seed in 0u64..500) {
            let g = random_connection_jet::<Rational>(n, k, seed, 10).unwrap();
            let back: Jet3<Rational, Connection> = jet_from_json(&jet_to_json(&g)).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
