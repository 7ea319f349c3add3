//! JSON report envelope.
//!
//! Schema: `{group, q: {p, eta, a}, order: {q_exponent, factors: [{id,
//! subst_degree, mult, value}], value}, sylow: {ell, d_ell, D_ell, n_phi,
//! w_phi: {degrees, order}, sylow_order, abelian, exception, torus_part}}`.
//! Integer values are decimal strings so arbitrary sizes survive JSON.
//! Ordering of all lists is canonical, so identical requests render
//! byte-identically.

use gensylow::analyzer::SylowReport;
use gensylow::arith::QSpec;
use gensylow::group_data::{GroupSpec, SimpleFactor};
use gensylow::order;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct Envelope {
    pub group: String,
    pub q: QSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sylow: Option<SylowJson>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct OrderJson {
    pub q_exponent: u64,
    pub factors: Vec<FactorJson>,
    pub value: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct FactorJson {
    pub id: String,
    pub subst_degree: u32,
    pub mult: u32,
    pub value: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct SylowJson {
    pub ell: u64,
    pub d_ell: u64,
    #[serde(rename = "D_ell")]
    pub d_set: Vec<u64>,
    pub n_phi: u32,
    pub w_phi: WPhiJson,
    pub sylow_order: String,
    pub abelian: bool,
    pub exception: String,
    pub torus_part: Vec<String>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct WPhiJson {
    pub degrees: Vec<u64>,
    pub order: u64,
}

impl Envelope {
    pub fn order(g: &GroupSpec, q: &QSpec) -> gensylow::Result<Envelope> {
        let fo = order::generic_order(g)?;
        let mut factors = Vec::new();
        for (key, mult) in &fo.factors {
            let value = gensylow::arith::quad_eval(&key.id.quad_poly(), &q.pow(key.subst))?;
            factors.push(FactorJson {
                id: key.id.to_string(),
                subst_degree: key.subst,
                mult: *mult,
                value: value.to_string(),
            });
        }
        Ok(Envelope {
            group: g.to_string(),
            q: *q,
            order: Some(OrderJson {
                q_exponent: fo.q_exponent,
                factors,
                value: fo.evaluate(q)?.to_string(),
            }),
            sylow: None,
        })
    }

    pub fn sylow(f: &SimpleFactor, q: &QSpec, r: &SylowReport) -> gensylow::Result<Envelope> {
        let order_env = Envelope::order(&GroupSpec::single(*f), q)?;
        Ok(Envelope {
            group: f.to_string(),
            q: *q,
            order: order_env.order,
            sylow: Some(SylowJson {
                ell: r.ell,
                d_ell: r.d_ell,
                d_set: r.big_d.clone(),
                n_phi: r.chosen.as_ref().map(|c| c.n_phi).unwrap_or(0),
                w_phi: WPhiJson {
                    degrees: r.w_phi_degrees.clone(),
                    order: r.w_phi_order,
                },
                sylow_order: r.sylow_order.to_string(),
                abelian: r.abelian,
                exception: r.exception.to_string(),
                torus_part: r.torus_part.iter().map(|x| x.to_string()).collect(),
            }),
        })
    }
}
