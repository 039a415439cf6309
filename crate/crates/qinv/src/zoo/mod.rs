//! Concrete algebras and their representation catalogs, addressed by name:
//! `group:Zn`, `group:S3`, `double:Zn`, `double:S3`, `uq_sl2:p`, `trivial`.

pub mod catalog;
pub mod finite;
pub mod group;
pub mod uqsl2;

pub use catalog::{Irrep, IrrepCatalog, Representation};
pub use finite::{drinfeld_double, group_algebra};
pub use group::FiniteGroupTable;
pub use uqsl2::uq_sl2;

use crate::hopf::HopfAlgebra;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZooError {
    #[error("unknown algebra name {0:?}")]
    UnknownName(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("catalog error: {0}")]
    Catalog(String),
}

/// Parsed registry name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSpec {
    Trivial,
    Group(GroupSpec),
    Double(GroupSpec),
    UqSl2(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    S3,
}

impl GroupSpec {
    fn parse(s: &str) -> Option<GroupSpec> {
        if s == "S3" {
            return Some(GroupSpec::S3);
        }
        let n: usize = s.strip_prefix('Z')?.parse().ok()?;
        (n >= 1).then_some(GroupSpec::Cyclic(n))
    }

    pub fn table(&self) -> FiniteGroupTable {
        match self {
            GroupSpec::Cyclic(n) => FiniteGroupTable::cyclic(*n),
            GroupSpec::S3 => FiniteGroupTable::s3(),
        }
    }
}

impl AlgebraSpec {
    pub fn parse(name: &str) -> Result<AlgebraSpec, ZooError> {
        let unknown = || ZooError::UnknownName(name.to_string());
        if name == "trivial" {
            return Ok(AlgebraSpec::Trivial);
        }
        let (kind, arg) = name.split_once(':').ok_or_else(unknown)?;
        match kind {
            "group" => GroupSpec::parse(arg)
                .map(AlgebraSpec::Group)
                .ok_or_else(unknown),
            "double" => GroupSpec::parse(arg)
                .map(AlgebraSpec::Double)
                .ok_or_else(unknown),
            "uq_sl2" => arg.parse().map(AlgebraSpec::UqSl2).map_err(|_| unknown()),
            _ => Err(unknown()),
        }
    }

    pub fn build(&self) -> Result<HopfAlgebra, ZooError> {
        Ok(match self {
            AlgebraSpec::Trivial => {
                let h = group_algebra(&FiniteGroupTable::cyclic(1));
                rename(h, "trivial")
            }
            AlgebraSpec::Group(g) => group_algebra(&g.table()),
            AlgebraSpec::Double(g) => drinfeld_double(&g.table()),
            AlgebraSpec::UqSl2(p) => uq_sl2(*p)?,
        })
    }

    pub fn catalog(&self, h: &HopfAlgebra) -> Result<IrrepCatalog, ZooError> {
        match self {
            AlgebraSpec::Trivial => catalog::trivial_catalog(h),
            AlgebraSpec::Group(g) => catalog::group_algebra_catalog(h, &g.table()),
            AlgebraSpec::Double(g) => catalog::double_catalog(h, &g.table()),
            AlgebraSpec::UqSl2(p) => catalog::uq_sl2_catalog(h, *p),
        }
    }

    pub fn is_semisimple(&self) -> bool {
        !matches!(self, AlgebraSpec::UqSl2(_))
    }
}

fn rename(h: HopfAlgebra, name: &str) -> HopfAlgebra {
    let mut v = h.to_json();
    v["name"] = serde_json::Value::String(name.into());
    HopfAlgebra::from_json(&v).expect("round trip of a valid algebra")
}

/// The algebras covered by the acceptance suite.
pub const ZOO: [&str; 9] = [
    "group:Z2",
    "group:Z3",
    "group:S3",
    "double:Z2",
    "double:Z3",
    "double:S3",
    "uq_sl2:3",
    "uq_sl2:5",
    "trivial",
];
