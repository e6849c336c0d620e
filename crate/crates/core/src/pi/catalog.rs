//! Built-in space models, addressable by name.
//!
//! Several models are reduced: homotopy groups whose structure is not needed
//! for the computations they support are set to zero, and the reduction is
//! recorded in the bracket notes.

use super::{FgAbelianGroup, Generator, SpaceModel};
use crate::error::{Error, Result};

/// A named model with a one-line description.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub model: SpaceModel,
}

/// Every built-in model. `ZeroBracket@N` is listed at `N = 6` but resolves
/// for any `N >= 2` through [`catalog_model`].
pub fn catalog() -> Vec<CatalogEntry> {
    [
        ("S2@4", "2-sphere: Z, Z, Z2 in degrees 2..4 with [i2,i2] = 2 eta"),
        ("M3@3", "mod-2 Moore space M^3: Z2, Z4 in degrees 2..3 with [i3,i3] of order 2"),
        ("M7reduced@11", "mod-2 Moore space M^7, only degrees 6 and 11 kept"),
        ("S4reduced@8", "4-sphere, only degrees 4, 5 and 8 kept, [i4,eta4] nonzero"),
        ("Wedge23@4", "S^2 v S^3 up to degree 4 with its basic product [i1,i2]"),
        ("ZeroBracket@6", "assorted groups in degrees 2..6, all brackets zero"),
    ]
    .into_iter()
    .map(|(name, description)| CatalogEntry {
        name: name.to_string(),
        description: description.to_string(),
        model: catalog_model(name).expect("catalog names resolve"),
    })
    .collect()
}

/// Looks a model up by name.
pub fn catalog_model(name: &str) -> Result<SpaceModel> {
    match name {
        "S2@4" => Ok(s2()),
        "M3@3" => Ok(m3()),
        "M7reduced@11" => Ok(m7_reduced()),
        "S4reduced@8" => Ok(s4_reduced()),
        "Wedge23@4" => Ok(wedge23()),
        _ => match name.strip_prefix("ZeroBracket@").map(str::parse::<u32>) {
            Some(Ok(n)) if n >= 2 => Ok(zero_bracket(n)),
            _ => Err(Error::UnknownModel(name.to_string())),
        },
    }
}

fn z() -> FgAbelianGroup {
    FgAbelianGroup::integers()
}

fn zn(d: u64) -> FgAbelianGroup {
    FgAbelianGroup::cyclic(d)
}

fn model(name: &str, truncation: u32, groups: Vec<(u32, FgAbelianGroup)>) -> SpaceModel {
    SpaceModel::new(name, truncation, groups).expect("catalog groups are in range")
}

fn bracket(m: &mut SpaceModel, a: (u32, usize), b: (u32, usize), coeffs: &[i64], note: &str) {
    let value = m
        .element_i64(a.0 + b.0 - 1, coeffs)
        .expect("catalog bracket values are well formed");
    m.set_bracket_symmetric(Generator::new(a.0, a.1), Generator::new(b.0, b.1), value, note);
}

fn s2() -> SpaceModel {
    let mut m = model("S2@4", 4, vec![(2, z()), (3, z()), (4, zn(2))]);
    bracket(
        &mut m,
        (2, 0),
        (2, 0),
        &[2],
        "[i2,i2] = 2 eta2, with eta2 the Hopf map generating pi3",
    );
    m
}

fn m3() -> SpaceModel {
    let mut m = model("M3@3", 3, vec![(2, zn(2)), (3, zn(4))]);
    bracket(
        &mut m,
        (2, 0),
        (2, 0),
        &[2],
        "[i3,i3] has order 2; 2 is the only element of order 2 in Z4",
    );
    m
}

fn m7_reduced() -> SpaceModel {
    let mut m = model("M7reduced@11", 11, vec![(6, zn(2)), (11, zn(2))]);
    bracket(
        &mut m,
        (6, 0),
        (6, 0),
        &[1],
        "[i7,i7] has order 2; degrees 7..10 reduced to zero and pi11 cut down to the span of [i7,i7]",
    );
    m
}

fn s4_reduced() -> SpaceModel {
    let mut m = model("S4reduced@8", 8, vec![(4, z()), (5, zn(2)), (8, zn(2))]);
    bracket(
        &mut m,
        (4, 0),
        (5, 0),
        &[1],
        "[i4,eta4] is nonzero in pi8; pi6, pi7 reduced to zero and pi8 cut down to the span of [i4,eta4]",
    );
    m
}

fn wedge23() -> SpaceModel {
    let mut m = model("Wedge23@4", 4, vec![(2, z()), (3, z()), (4, z())]);
    bracket(
        &mut m,
        (2, 0),
        (3, 0),
        &[1],
        "basic product [i1,i2] generates pi4; the S^2 summands of pi3, pi4 are reduced to zero",
    );
    m
}

/// Groups cycle through `Z`, `Z2`, `Z+Z3`, `Z4` by degree.
fn zero_bracket(n: u32) -> SpaceModel {
    let groups = (2..=n)
        .map(|d| {
            let g = match (d - 2) % 4 {
                0 => z(),
                1 => zn(2),
                2 => FgAbelianGroup::new(vec![0, 3]).expect("valid orders"),
                _ => zn(4),
            };
            (d, g)
        })
        .collect();
    model(&format!("ZeroBracket@{n}"), n, groups)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_models_validate() {
        for entry in catalog() {
            assert_eq!(entry.model.validate(), vec![], "{}", entry.name);
            assert_eq!(entry.model.name(), entry.name);
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(catalog_model("ZeroBracket@3").unwrap().groups().count(), 2);
        assert!(catalog_model("ZeroBracket@1").is_err());
        assert!(matches!(catalog_model("S5"), Err(Error::UnknownModel(_))));
    }

    #[test]
    fn s4_bracket_is_symmetric() {
        let m = catalog_model("S4reduced@8").unwrap();
        let i4 = Generator::new(4, 0);
        let eta = Generator::new(5, 0);
        assert_eq!(m.brackets().get(i4, eta), m.brackets().get(eta, i4));
        assert_eq!(m.brackets().nonzero().count(), 2);
    }
}
