//! JSON documents for polynomials, diagrams, templates and node polynomials.

use floorpoly_core::assembly::NodePolynomial;
use floorpoly_core::ext::ExtendedTemplate;
use floorpoly_core::floor::{Edge, FloorDiagram};
use floorpoly_core::poly::{Monomial, MultiPoly, Var};
use floorpoly_core::seq::SupportMatrix;
use floorpoly_core::template::Template;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    pub fn from_poly(p: &MultiPoly) -> Self {
        let vars: Vec<Var> = p.variables();
        let terms = p
            .terms()
            .map(|(m, c)| TermJson {
                coeff: c.to_string(),
                exps: vars.iter().map(|&v| m.exponent(v)).collect(),
            })
            .collect();
        PolyJson {
            vars: vars.iter().map(|v| v.name()).collect(),
            terms,
        }
    }

    pub fn to_poly(&self) -> Result<MultiPoly, String> {
        let vars: Vec<Var> = self
            .vars
            .iter()
            .map(|s| Var::from_name(s).ok_or_else(|| format!("unknown variable {s}")))
            .collect::<Result<_, _>>()?;
        let mut p = MultiPoly::zero();
        for t in &self.terms {
            if t.exps.len() != vars.len() {
                return Err(format!("term has {} exponents for {} variables", t.exps.len(), vars.len()));
            }
            let c: BigRational = t.coeff.parse().map_err(|_| format!("bad coefficient {}", t.coeff))?;
            let pairs = vars.iter().copied().zip(t.exps.iter().copied()).filter(|p| p.1 > 0).collect();
            p.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub d: usize,
    pub edges: Vec<Edge>,
}

impl From<&FloorDiagram> for DiagramJson {
    fn from(fd: &FloorDiagram) -> Self {
        DiagramJson {
            d: fd.degree(),
            edges: fd.edges().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateInvariantsJson {
    pub delta: usize,
    pub l: usize,
    pub mu: String,
    pub kappa: Vec<u64>,
    pub k_min: usize,
    pub s: usize,
    pub p: PolyJson,
    pub p_text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateJson {
    pub l: usize,
    pub edges: Vec<Edge>,
    pub invariants: TemplateInvariantsJson,
}

impl TemplateJson {
    pub fn new(t: &Template, p: &MultiPoly) -> Self {
        let inv = t.invariants();
        TemplateJson {
            l: t.len(),
            edges: t.edges().to_vec(),
            invariants: TemplateInvariantsJson {
                delta: inv.delta,
                l: inv.l,
                mu: inv.mu.to_string(),
                kappa: inv.kappa,
                k_min: inv.k_min,
                s: inv.s,
                p: PolyJson::from_poly(p),
                p_text: p.to_string(),
            },
        }
    }

    pub fn template(&self) -> Result<Template, String> {
        Template::new(self.l, self.edges.clone()).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaJson {
    pub l: usize,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtInvariantsJson {
    pub delta: usize,
    pub l: usize,
    pub mu: String,
    pub kappa: Vec<u64>,
    pub d_min: usize,
    pub s: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtJson {
    pub lambda: LambdaJson,
    #[serde(rename = "A")]
    pub a: Vec<Vec<u64>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<u64>>,
    pub invariants: ExtInvariantsJson,
    pub q: PolyJson,
    pub q_text: String,
}

impl ExtJson {
    pub fn new(ext: &ExtendedTemplate, q: &MultiPoly) -> Self {
        let inv = ext.invariants();
        ExtJson {
            lambda: LambdaJson {
                l: ext.len(),
                edges: ext.lambda().to_vec(),
            },
            a: ext.a().to_dense(),
            b: ext.b().to_dense(),
            invariants: ExtInvariantsJson {
                delta: inv.delta,
                l: inv.l,
                mu: inv.mu.to_string(),
                kappa: inv.kappa,
                d_min: inv.d_min,
                s: inv.s,
            },
            q: PolyJson::from_poly(q),
            q_text: q.to_string(),
        }
    }

    pub fn ext(&self) -> Result<ExtendedTemplate, String> {
        ExtendedTemplate::new(
            self.lambda.l,
            self.lambda.edges.clone(),
            SupportMatrix::from_rows(&self.a),
            SupportMatrix::from_rows(&self.b),
        )
        .map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodePolyJson {
    pub delta: usize,
    pub domain: String,
    #[serde(flatten)]
    pub poly: PolyJson,
}

impl NodePolyJson {
    pub fn new(n: &NodePolynomial) -> Self {
        NodePolyJson {
            delta: n.delta,
            domain: "|beta|>=delta".into(),
            poly: PolyJson::from_poly(&n.poly),
        }
    }

    pub fn node_polynomial(&self) -> Result<NodePolynomial, String> {
        Ok(NodePolynomial {
            delta: self.delta,
            poly: self.poly.to_poly()?,
        })
    }
}
