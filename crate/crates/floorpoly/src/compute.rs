//! Cached, parallel front ends to the core generators and the assembly.

use floorpoly_core::assembly::{ext_summand, first_factor_table, Catalog, CatalogTemplate, NodePolynomial};
use floorpoly_core::ext::enumerate_extended_templates;
use floorpoly_core::poly::MultiPoly;
use floorpoly_core::template::enumerate_templates;
use rayon::prelude::*;

use crate::cache::{Cache, Kind};
use crate::formats::{ExtJson, NodePolyJson, TemplateJson};

pub const MAX_TEMPLATE_DELTA: usize = 6;
pub const MAX_EXT_DELTA: usize = 4;
pub const MAX_ASSEMBLY_DELTA: usize = 6;

#[derive(Debug)]
pub enum ComputeError {
    /// delta above the supported range for this kind of object
    TooLarge { what: &'static str, delta: usize, max: usize },
    Core(floorpoly_core::Error),
    Format(String),
}

impl std::fmt::Display for ComputeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComputeError::TooLarge { what, delta, max } => {
                write!(f, "{what} at delta = {delta} refused: supported range is delta <= {max}")
            }
            ComputeError::Core(e) => write!(f, "{e}"),
            ComputeError::Format(e) => write!(f, "{e}"),
        }
    }
}

impl From<floorpoly_core::Error> for ComputeError {
    fn from(e: floorpoly_core::Error) -> Self {
        ComputeError::Core(e)
    }
}

pub type Result<T> = std::result::Result<T, ComputeError>;

#[derive(Clone, Debug)]
pub struct Context {
    pub cache: Cache,
    /// lift the default delta limits
    pub allow_large: bool,
}

impl Context {
    pub fn new(cache: Cache) -> Self {
        Context { cache, allow_large: false }
    }

    fn check(&self, what: &'static str, delta: usize, max: usize) -> Result<()> {
        if delta > max && !self.allow_large {
            return Err(ComputeError::TooLarge { what, delta, max });
        }
        Ok(())
    }

    pub fn templates(&self, delta: usize) -> Result<Vec<TemplateJson>> {
        self.check("template generation", delta, MAX_TEMPLATE_DELTA)?;
        self.cache.get_or_compute(Kind::Templates, delta, || {
            enumerate_templates(delta)
                .par_iter()
                .map(|t| Ok(TemplateJson::new(t, &t.poly()?)))
                .collect()
        })
    }

    pub fn ext_templates(&self, delta: usize) -> Result<Vec<ExtJson>> {
        self.check("extended template generation", delta, MAX_EXT_DELTA)?;
        self.cache.get_or_compute(Kind::ExtTemplates, delta, || {
            Ok(enumerate_extended_templates(delta)
                .par_iter()
                .map(|e| ExtJson::new(e, &e.q_poly()))
                .collect())
        })
    }

    pub fn node_polynomial(&self, delta: usize) -> Result<NodePolynomial> {
        if delta > MAX_ASSEMBLY_DELTA {
            return Err(ComputeError::TooLarge {
                what: "node polynomial assembly",
                delta,
                max: MAX_ASSEMBLY_DELTA,
            });
        }
        let doc = self
            .cache
            .get_or_compute(Kind::NodePoly, delta, || -> Result<NodePolyJson> { Ok(NodePolyJson::new(&assemble(delta)?)) })?;
        doc.node_polynomial().map_err(ComputeError::Format)
    }
}

/// N_delta with the template catalog and the extended-template summands built in parallel.
pub fn assemble(delta: usize) -> Result<NodePolynomial> {
    let templates: Vec<_> = (1..=delta).flat_map(enumerate_templates).collect();
    let entries = templates
        .into_par_iter()
        .map(CatalogTemplate::new)
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let catalog = Catalog::from_templates(delta, entries);
    let h = first_factor_table(&catalog, delta);
    let exts: Vec<_> = (0..=delta).flat_map(enumerate_extended_templates).collect();
    let poly = exts
        .par_iter()
        .map(|e| ext_summand(e, delta, &h))
        .reduce(MultiPoly::zero, |a, b| &a + &b);
    Ok(NodePolynomial { delta, poly })
}
