//! Structured descriptions of the classified diffeomorphism types:
//! sphere products with torus factors, the one- and two-quadric
//! Lagrangian quotients, surface bundles, and honest fallbacks.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TopologyDescription {
    /// A product of odd-dimensional spheres and a torus. An empty list
    /// with a zero torus is a point.
    SphereProductTorus {
        sphere_dims: Vec<usize>,
        torus_dim: usize,
    },
    /// The one-quadric Lagrangian quotient on `m` coordinates:
    /// `S^{m-1} x S^1` for even `m`, the `m`-dimensional Klein analogue
    /// for odd `m`.
    NOfM { m: usize },
    /// The two-quadric Lagrangian quotient `N_k(p, q)`.
    NKpq { k: usize, p: usize, q: usize },
    /// A bundle over a torus whose fiber is a closed orientable surface;
    /// `components` copies when redundant coordinates split it.
    SurfaceBundle {
        genus: u64,
        base_torus_dim: usize,
        components: u64,
    },
    /// Fallback for unclassified Lagrangian cases: a bundle over a torus
    /// with the real intersection as fiber, and at the same time a
    /// principal torus bundle over the fiber modulo the sign group.
    BundleGeneric {
        fiber_dim: usize,
        base_torus_dim: usize,
    },
    /// The construction gives an immersion that is not an embedding; no
    /// diffeomorphism type is claimed.
    ImmersionOnly,
    /// No classification is implemented for this shape.
    Unclassified { reason: String },
}

impl TopologyDescription {
    pub fn tag(&self) -> &'static str {
        match self {
            TopologyDescription::SphereProductTorus { .. } => "sphere_product_torus",
            TopologyDescription::NOfM { .. } => "N_of_m",
            TopologyDescription::NKpq { .. } => "N_kpq",
            TopologyDescription::SurfaceBundle { .. } => "surface_bundle",
            TopologyDescription::BundleGeneric { .. } => "bundle_generic",
            TopologyDescription::ImmersionOnly => "immersion_only",
            TopologyDescription::Unclassified { .. } => "unclassified",
        }
    }

    pub fn orientation_note(&self) -> Option<&'static str> {
        match self {
            TopologyDescription::SphereProductTorus { .. } => Some("orientable"),
            TopologyDescription::NOfM { m } => Some(if m % 2 == 0 {
                "orientable"
            } else {
                "non-orientable"
            }),
            _ => None,
        }
    }
}

impl fmt::Display for TopologyDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyDescription::SphereProductTorus {
                sphere_dims,
                torus_dim,
            } => {
                let mut parts: Vec<String> = Vec::new();
                for d in sphere_dims {
                    parts.push(alloc::format!("S^{d}"));
                }
                match torus_dim {
                    0 => {}
                    1 => parts.push(String::from("S^1")),
                    t => parts.push(alloc::format!("T^{t}")),
                }
                if parts.is_empty() {
                    write!(f, "point")
                } else {
                    write!(f, "{}", parts.join(" x "))
                }
            }
            TopologyDescription::NOfM { m } => {
                if m % 2 == 0 {
                    write!(f, "N({m}) = S^{} x S^1", m - 1)
                } else {
                    write!(f, "N({m}) = K^{m}, the {m}-dimensional Klein bottle")
                }
            }
            TopologyDescription::NKpq { k, p, q } => write!(f, "N_{k}({p},{q})"),
            TopologyDescription::SurfaceBundle {
                genus,
                base_torus_dim,
                components,
            } => {
                write!(
                    f,
                    "bundle over T^{base_torus_dim} with fiber a closed orientable surface of genus {genus}"
                )?;
                if *components > 1 {
                    write!(f, ", in {components} disjoint copies")?;
                }
                Ok(())
            }
            TopologyDescription::BundleGeneric {
                fiber_dim,
                base_torus_dim,
            } => write!(
                f,
                "bundle over T^{base_torus_dim} with the {fiber_dim}-dimensional real intersection as fiber; also a principal T^{base_torus_dim}-bundle over the fiber modulo the sign group"
            ),
            TopologyDescription::ImmersionOnly => {
                write!(f, "immersion only; the quotient map is not an embedding")
            }
            TopologyDescription::Unclassified { reason } => {
                write!(f, "unclassified: {reason}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn sphere_product_rendering() {
        let d = TopologyDescription::SphereProductTorus {
            sphere_dims: vec![3, 3],
            torus_dim: 0,
        };
        assert_eq!(d.to_string(), "S^3 x S^3");
        assert_eq!(d.tag(), "sphere_product_torus");

        let with_torus = TopologyDescription::SphereProductTorus {
            sphere_dims: vec![7],
            torus_dim: 2,
        };
        assert_eq!(with_torus.to_string(), "S^7 x T^2");

        let point = TopologyDescription::SphereProductTorus {
            sphere_dims: vec![],
            torus_dim: 0,
        };
        assert_eq!(point.to_string(), "point");
    }

    #[test]
    fn one_quadric_parity() {
        let even = TopologyDescription::NOfM { m: 4 };
        assert_eq!(even.to_string(), "N(4) = S^3 x S^1");
        assert_eq!(even.orientation_note(), Some("orientable"));

        let odd = TopologyDescription::NOfM { m: 5 };
        assert_eq!(odd.orientation_note(), Some("non-orientable"));
    }

    #[test]
    fn surface_bundle_rendering() {
        let d = TopologyDescription::SurfaceBundle {
            genus: 5,
            base_torus_dim: 3,
            components: 1,
        };
        assert_eq!(
            d.to_string(),
            "bundle over T^3 with fiber a closed orientable surface of genus 5"
        );
    }
}
