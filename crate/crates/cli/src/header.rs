//! Provenance stamped on every artifact.

use std::sync::Arc;

use hermicode_core::gf::FieldCtx;
use hermicode_core::hermitian::HermitianSpace;
use hermicode_core::CODE_VERSION;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default seed for every randomized step; fixed so reruns are identical.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub p: u32,
    pub h: u32,
    pub n: usize,
    pub polynomial_id: String,
    pub code_version: String,
    pub seed: u64,
}

impl Header {
    pub fn new(field: &FieldCtx, n: usize, seed: u64) -> Self {
        Header {
            p: field.p(),
            h: field.h(),
            n,
            polynomial_id: field.polynomial_id(),
            code_version: CODE_VERSION.to_string(),
            seed,
        }
    }

    pub fn for_space(space: &HermitianSpace, seed: u64) -> Self {
        Header::new(space.field(), space.n(), seed)
    }

    /// Rebuilds the field, refusing a header whose defining polynomial or
    /// code version differs from this build.
    pub fn field(&self) -> Result<Arc<FieldCtx>> {
        let f = FieldCtx::new(self.p, self.h)?;
        check("polynomial_id", &f.polynomial_id(), &self.polynomial_id)?;
        check("code_version", CODE_VERSION, &self.code_version)?;
        Ok(Arc::new(f))
    }

    /// Two artifacts can be combined when they describe the same geometry
    /// built by the same code. Seeds may differ.
    pub fn ensure_compatible(&self, other: &Header) -> Result<()> {
        check("p", &self.p, &other.p)?;
        check("h", &self.h, &other.h)?;
        check("n", &self.n, &other.n)?;
        check("polynomial_id", &self.polynomial_id, &other.polynomial_id)?;
        check("code_version", &self.code_version, &other.code_version)
    }
}

fn check<T: PartialEq + ToString + ?Sized>(field: &'static str, a: &T, b: &T) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::HeaderMismatch { field, left: a.to_string(), right: b.to_string() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mismatches_are_named() {
        let f = FieldCtx::from_order(4).unwrap();
        let a = Header::new(&f, 1, 1);
        let mut b = Header::new(&f, 1, 2);
        a.ensure_compatible(&b).unwrap();
        b.n = 2;
        match a.ensure_compatible(&b) {
            Err(Error::HeaderMismatch { field, .. }) => assert_eq!(field, "n"),
            other => panic!("{other:?}"),
        }
        let mut c = a.clone();
        c.polynomial_id = "bogus".into();
        assert!(c.field().is_err());
        assert_eq!(a.field().unwrap().order(), 4);
    }
}
