//! Sign actions of the two-torsion quotient of the dual lattice on the
//! real intersection of quadrics, the embedding criterion for the spread
//! Lagrangian submanifold, and its topological classification in the
//! one-quadric, two-quadric, and polygon cases.

use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed};

use crate::lattice::Lattice;
use crate::presentation::{analyze_presentation, enumerate_vertices};
use crate::quadric::{
    is_nondegenerate, link_normal_form, polyhedron_from_quadrics, QuadricSystem, Realm,
};
use crate::scalar::{rat, Rational};
use crate::topology::TopologyDescription;
use crate::util::dot;
use crate::{Error, Result};

/// One generator of the sign action: an element `phi` of half the dual
/// lattice taken modulo the dual lattice, and the signs it induces on
/// the `m` real coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignGenerator {
    pub phi: Vec<Rational>,
    pub signs: Vec<i8>,
}

/// The group `(1/2)L*/L*` generated by half the dual basis of the
/// lattice spanned by the quadric columns, acting on the real
/// intersection by coordinatewise sign flips.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DGammaAction {
    pub generators: Vec<SignGenerator>,
}

impl DGammaAction {
    /// Sign patterns of all group elements, one per subset of the
    /// generators, as flip indicators.
    pub fn sign_patterns(&self) -> Vec<Vec<bool>> {
        let m = self.generators.first().map_or(0, |g| g.signs.len());
        let mut patterns = alloc::vec![alloc::vec![false; m]];
        for g in &self.generators {
            let flips: Vec<bool> = g.signs.iter().map(|&s| s < 0).collect();
            let mut extended = Vec::with_capacity(patterns.len() * 2);
            for p in &patterns {
                extended.push(p.iter().zip(&flips).map(|(a, b)| a != b).collect());
            }
            patterns.extend(extended);
        }
        patterns
    }
}

/// Computes the sign action from the quadric columns: the column lattice
/// via Hermite reduction, its dual via the inverse transpose, and one
/// generator per half dual basis vector with exactly computed parities.
pub fn dgamma_action(q: &QuadricSystem) -> Result<DGammaAction> {
    if q.realm() != Realm::Real {
        return Err(Error::WrongRealm);
    }
    let columns = q.columns();
    let lattice = Lattice::from_generators(q.codim(), &columns)?;
    let dual = lattice.dual()?;
    let half = rat(1) / rat(2);
    let mut generators = Vec::with_capacity(dual.rank());
    for basis_vec in dual.rational_basis() {
        let phi: Vec<Rational> = basis_vec.iter().map(|v| v * &half).collect();
        let mut signs = Vec::with_capacity(q.m());
        for column in &columns {
            let pairing = dot(column, &basis_vec);
            assert!(
                pairing.denom().is_one(),
                "dual basis vectors pair integrally with the columns"
            );
            signs.push(if pairing.numer().is_even() { 1 } else { -1 });
        }
        generators.push(SignGenerator { phi, signs });
    }
    Ok(DGammaAction { generators })
}

/// Outcome of the embedding criterion for the spread Lagrangian.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EmbeddingCheck {
    pub embeds: bool,
    /// Coordinates that stay nonzero over a vertex whose columns generate
    /// a proper sublattice, present exactly when the check fails.
    pub failing_support: Option<Vec<usize>>,
}

/// Tests whether spreading the real intersection by the torus gives an
/// embedding: over every vertex of the associated polyhedron, the columns
/// at the nonzero coordinates must generate the full column lattice.
pub fn hminimal_embedding_check(q: &QuadricSystem) -> Result<EmbeddingCheck> {
    if q.realm() != Realm::Real {
        return Err(Error::WrongRealm);
    }
    if !is_nondegenerate(q).nondegenerate {
        return Err(Error::Degenerate);
    }
    let p = polyhedron_from_quadrics(q)?;
    let columns = q.columns();
    let lattice = Lattice::from_generators(q.codim(), &columns)?;
    for v in enumerate_vertices(&p).vertices {
        let support: Vec<usize> = (0..q.m()).filter(|j| !v.active.contains(j)).collect();
        let at_support: Vec<Vec<Rational>> =
            support.iter().map(|&j| columns[j].clone()).collect();
        let sub = Lattice::from_generators(q.codim(), &at_support)?;
        if !lattice.quotient(&sub)?.is_trivial() {
            return Ok(EmbeddingCheck {
                embeds: false,
                failing_support: Some(support),
            });
        }
    }
    Ok(EmbeddingCheck {
        embeds: true,
        failing_support: None,
    })
}

/// Classifies the spread Lagrangian by the cases with a proven
/// diffeomorphism type: parity of `m` for one quadric, the double
/// quotient `N_k(p,q)` for two quadrics, and surface bundles over
/// polygons. Everything else reports its bundle structure only, and a
/// failed embedding check reports immersion-only status.
pub fn classify_lagrangian(q: &QuadricSystem) -> Result<TopologyDescription> {
    let check = hminimal_embedding_check(q)?;
    if !check.embeds {
        return Ok(TopologyDescription::ImmersionOnly);
    }
    let p = polyhedron_from_quadrics(q)?;
    let analysis = analyze_presentation(&p);
    let generic_bundle = TopologyDescription::BundleGeneric {
        fiber_dim: p.n(),
        base_torus_dim: q.codim(),
    };
    if !analysis.bounded {
        return Ok(generic_bundle);
    }
    match q.codim() {
        1 => Ok(TopologyDescription::NOfM { m: q.m() }),
        2 => classify_two_quadrics(q),
        _ if p.n() == 2 => {
            let stripped = analysis.redundant.len();
            let sides = q.m() - stripped;
            let genus = 1 + (1i64 << (sides - 3)) * (sides as i64 - 4);
            Ok(TopologyDescription::SurfaceBundle {
                genus: genus as u64,
                base_torus_dim: q.m() - 2,
                components: 1u64 << stripped,
            })
        }
        _ => Ok(generic_bundle),
    }
}

/// Reduces a free two-involution sign table to its normal form: one
/// element flips exactly one sign block of the homogeneous quadric row,
/// the other two flip the complementary block plus complementary parts of
/// the first. The block sizes give `(p, q)` and the smaller part of the
/// split gives `k`.
fn classify_two_quadrics(q: &QuadricSystem) -> Result<TopologyDescription> {
    let form = link_normal_form(q)?;
    let mut positive = alloc::vec![false; q.m()];
    for k in 0..q.m() {
        let v = form.g.at(0, k);
        if v.is_positive() {
            positive[k] = true;
        } else if !v.is_negative() {
            return Err(Error::Internal(String::from(
                "a nondegenerate two-quadric link row has no zero entries",
            )));
        }
    }
    let action = dgamma_action(q)?;
    let flips = |i: usize| -> Vec<bool> {
        action.generators[i].signs.iter().map(|&s| s < 0).collect()
    };
    let first = flips(0);
    let second = flips(1);
    let product: Vec<bool> = first.iter().zip(&second).map(|(a, b)| a != b).collect();
    let elements = [first, second, product];
    let negative: Vec<bool> = positive.iter().map(|b| !b).collect();
    let pure = if elements.contains(&positive) {
        positive
    } else if elements.contains(&negative) {
        negative
    } else {
        return Err(Error::Internal(String::from(
            "a free sign action flips one full sign block and nothing else",
        )));
    };
    let p = pure.iter().filter(|&&b| b).count();
    let mixed: Vec<&Vec<bool>> = elements.iter().filter(|e| **e != pure).collect();
    if mixed.len() != 2 {
        return Err(Error::Internal(String::from(
            "a free sign action has three distinct nonzero elements",
        )));
    }
    for e in &mixed {
        if (0..q.m()).any(|k| !pure[k] && !e[k]) {
            return Err(Error::Internal(String::from(
                "the mixed elements of a free sign action flip the complementary block fully",
            )));
        }
    }
    let shared = (0..q.m()).filter(|&k| pure[k] && mixed[0][k]).count();
    Ok(TopologyDescription::NKpq {
        k: shared.min(p - shared),
        p,
        q: q.m() - p,
    })
}

/// Dimension bookkeeping for a Lagrangian in a toric target: the first
/// system cuts the target out of complex space, the second cuts the
/// submanifold. All three systems (each and the stack) must be
/// nondegenerate; the Delzant state of each is reported.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ToricTargetReport {
    /// Complex dimension of the toric target, which is also the real
    /// dimension of the Lagrangian inside it.
    pub target_dim: usize,
    /// Dimension of the quotient core, the part of the Lagrangian not
    /// spread by the torus.
    pub core_dim: usize,
    pub gamma_delzant: bool,
    pub delta_delzant: bool,
    pub joint_delzant: bool,
}

impl ToricTargetReport {
    pub fn all_delzant(&self) -> bool {
        self.gamma_delzant && self.delta_delzant && self.joint_delzant
    }
}

/// Validates a pair of quadric systems on the same coordinates for the
/// toric-target construction and reports the dimensions involved.
pub fn toric_target_check(
    gamma: &QuadricSystem,
    delta: &QuadricSystem,
) -> Result<ToricTargetReport> {
    if delta.m() != gamma.m() {
        return Err(Error::DimensionMismatch {
            expected: gamma.m(),
            got: delta.m(),
        });
    }
    let joint = QuadricSystem::new(
        gamma.gamma().vstack(delta.gamma()),
        gamma
            .delta()
            .iter()
            .chain(delta.delta())
            .cloned()
            .collect(),
        gamma.realm(),
    )?;
    for system in [gamma, delta, &joint] {
        if !is_nondegenerate(system).nondegenerate {
            return Err(Error::Degenerate);
        }
    }
    let free = |system: &QuadricSystem| -> bool {
        crate::quadric::moment_map_report(system).action_free
    };
    Ok(ToricTargetReport {
        target_dim: gamma.m() - gamma.codim(),
        core_dim: gamma.m() - joint.codim(),
        gamma_delzant: free(gamma),
        delta_delzant: free(delta),
        joint_delzant: free(&joint),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Mat;
    use crate::presentation::Presentation;
    use crate::quadric::{moment_map_report, quadrics_from_presentation};
    use alloc::vec;

    fn ratv(vals: &[i64]) -> Vec<Rational> {
        vals.iter().map(|&v| rat(v)).collect()
    }

    fn system(rows: &[&[i64]], delta: &[i64]) -> QuadricSystem {
        let g = Mat::from_rows(rows.iter().map(|r| ratv(r)).collect());
        QuadricSystem::new(g, ratv(delta), Realm::Real).unwrap()
    }

    fn equal_coefficients(m: usize) -> QuadricSystem {
        let row: Vec<i64> = vec![1; m];
        system(&[&row], &[1])
    }

    /// The unit-lattice model of a two-quadric system with `k` shared
    /// coordinates: the first equation sums the first `p` squares, the
    /// second sums the shared `k` plus the last `q`.
    fn two_quadric_instance(k: usize, p: usize, q: usize) -> QuadricSystem {
        let m = p + q;
        let mut row1 = vec![0i64; m];
        let mut row2 = vec![0i64; m];
        for i in 0..p {
            row1[i] = 1;
        }
        for i in 0..k {
            row2[i] = 1;
        }
        for i in p..m {
            row2[i] = 1;
        }
        system(&[&row1, &row2], &[1, 2])
    }

    fn pentagon() -> Presentation {
        let cols = vec![
            ratv(&[1, 0]),
            ratv(&[0, 1]),
            ratv(&[-1, 0]),
            ratv(&[0, -1]),
            ratv(&[-1, -1]),
        ];
        Presentation::from_columns(&cols, ratv(&[0, 0, 2, 2, 3])).unwrap()
    }

    fn pentagon_quadrics() -> QuadricSystem {
        quadrics_from_presentation(&pentagon()).with_realm(Realm::Real)
    }

    #[test]
    fn equal_coefficients_give_the_antipodal_involution() {
        let action = dgamma_action(&equal_coefficients(4)).unwrap();
        assert_eq!(action.generators.len(), 1);
        let g = &action.generators[0];
        assert_eq!(g.phi, vec![rat(1) / rat(2)]);
        assert_eq!(g.signs, vec![-1, -1, -1, -1]);
    }

    #[test]
    fn identity_block_flips_single_coordinates() {
        let q = system(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[1, 1, 1]);
        let action = dgamma_action(&q).unwrap();
        assert_eq!(action.generators.len(), 3);
        for (i, g) in action.generators.iter().enumerate() {
            let mut phi = vec![rat(0); 3];
            phi[i] = rat(1) / rat(2);
            assert_eq!(g.phi, phi);
            for (k, &s) in g.signs.iter().enumerate() {
                assert_eq!(s, if k == i { -1 } else { 1 });
            }
        }
    }

    #[test]
    fn shared_block_instance_recovers_the_standard_involutions() {
        let action = dgamma_action(&two_quadric_instance(1, 2, 3)).unwrap();
        assert_eq!(action.generators.len(), 2);
        assert_eq!(action.generators[0].signs, vec![-1, -1, 1, 1, 1]);
        assert_eq!(action.generators[1].signs, vec![-1, 1, -1, -1, -1]);
    }

    #[test]
    fn sign_group_is_basis_independent() {
        let q = two_quadric_instance(1, 2, 3);
        let action = dgamma_action(&q).unwrap();
        let mut group = action.sign_patterns();
        group.sort();

        let alternative = [ratv(&[1, 1]), ratv(&[0, 1])];
        let columns = q.columns();
        let mut regenerated: Vec<Vec<bool>> = Vec::new();
        for mask in 0..4u32 {
            let mut pattern = vec![false; q.m()];
            for (bit, basis_vec) in alternative.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    for (k, column) in columns.iter().enumerate() {
                        if dot(column, basis_vec).numer().is_odd() {
                            pattern[k] = !pattern[k];
                        }
                    }
                }
            }
            regenerated.push(pattern);
        }
        regenerated.sort();
        assert_eq!(group, regenerated);
    }

    #[test]
    fn hermitian_input_rejected() {
        let q = equal_coefficients(3).with_realm(Realm::Hermitian);
        assert!(matches!(dgamma_action(&q), Err(Error::WrongRealm)));
        assert!(matches!(
            hminimal_embedding_check(&q),
            Err(Error::WrongRealm)
        ));
        assert!(matches!(classify_lagrangian(&q), Err(Error::WrongRealm)));
    }

    #[test]
    fn rank_deficient_columns_rejected() {
        let q = system(&[&[1, 1], &[1, 1]], &[1, 1]);
        assert!(matches!(
            dgamma_action(&q),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn equal_coefficients_embed() {
        let check = hminimal_embedding_check(&equal_coefficients(3)).unwrap();
        assert!(check.embeds);
        assert_eq!(check.failing_support, None);
    }

    #[test]
    fn index_two_sublattice_blocks_the_embedding() {
        let q = system(&[&[1, 1, 2]], &[1]);
        let check = hminimal_embedding_check(&q).unwrap();
        assert!(!check.embeds);
        assert_eq!(check.failing_support, Some(vec![2]));
    }

    #[test]
    fn pentagon_embeds() {
        assert!(hminimal_embedding_check(&pentagon_quadrics()).unwrap().embeds);
    }

    #[test]
    fn embedding_matches_the_moment_map_freeness() {
        let inputs = [
            equal_coefficients(3),
            system(&[&[1, 1, 2]], &[1]),
            pentagon_quadrics(),
            two_quadric_instance(1, 2, 3),
        ];
        for q in inputs {
            let embeds = hminimal_embedding_check(&q).unwrap().embeds;
            let report = moment_map_report(&q.clone().with_realm(Realm::Hermitian));
            assert_eq!(embeds, report.action_free);
        }
    }

    #[test]
    fn degenerate_system_rejected() {
        let q = system(&[&[1, -1]], &[0]);
        assert!(matches!(
            hminimal_embedding_check(&q),
            Err(Error::Degenerate)
        ));
    }

    #[test]
    fn one_quadric_classification_depends_on_parity_only() {
        for m in 3..=8 {
            let result = classify_lagrangian(&equal_coefficients(m)).unwrap();
            assert_eq!(result, TopologyDescription::NOfM { m });
            let expected = if m % 2 == 0 {
                "orientable"
            } else {
                "non-orientable"
            };
            assert_eq!(result.orientation_note(), Some(expected));
        }
    }

    #[test]
    fn unequal_coefficients_give_an_immersion_only() {
        let q = system(&[&[1, 1, 2]], &[1]);
        assert_eq!(
            classify_lagrangian(&q).unwrap(),
            TopologyDescription::ImmersionOnly
        );
    }

    #[test]
    fn two_quadric_instances_recover_their_triples() {
        for m in 2..=6usize {
            for p in 1..m {
                let q = m - p;
                for k in 0..=p / 2 {
                    let result =
                        classify_lagrangian(&two_quadric_instance(k, p, q)).unwrap();
                    assert_eq!(
                        result,
                        TopologyDescription::NKpq { k, p, q },
                        "instance ({k}, {p}, {q})"
                    );
                }
            }
        }
    }

    #[test]
    fn shared_block_complement_collapses_to_the_canonical_triple() {
        let full = classify_lagrangian(&two_quadric_instance(2, 2, 3)).unwrap();
        assert_eq!(full, TopologyDescription::NKpq { k: 0, p: 2, q: 3 });
        let larger = classify_lagrangian(&two_quadric_instance(3, 4, 2)).unwrap();
        assert_eq!(larger, TopologyDescription::NKpq { k: 1, p: 4, q: 2 });
    }

    #[test]
    fn column_order_does_not_change_the_classification() {
        let reference = classify_lagrangian(&two_quadric_instance(1, 2, 3)).unwrap();
        let reversed = system(
            &[&[0, 0, 0, 1, 1], &[1, 1, 1, 0, 1]],
            &[1, 2],
        );
        assert_eq!(classify_lagrangian(&reversed).unwrap(), reference);
        let shuffled = system(
            &[&[0, 1, 1, 0, 0], &[1, 0, 1, 1, 1]],
            &[1, 2],
        );
        assert_eq!(classify_lagrangian(&shuffled).unwrap(), reference);
    }

    #[test]
    fn square_gives_the_four_torus() {
        let q = system(&[&[1, 0, 1, 0], &[0, 1, 0, 1]], &[2, 2]);
        assert_eq!(
            classify_lagrangian(&q).unwrap(),
            TopologyDescription::NKpq { k: 0, p: 2, q: 2 }
        );
    }

    #[test]
    fn pentagon_is_a_genus_five_surface_bundle() {
        assert_eq!(
            classify_lagrangian(&pentagon_quadrics()).unwrap(),
            TopologyDescription::SurfaceBundle {
                genus: 5,
                base_torus_dim: 3,
                components: 1,
            }
        );
    }

    #[test]
    fn redundant_polygon_coordinates_split_components() {
        let cols = vec![
            ratv(&[1, 0]),
            ratv(&[0, 1]),
            ratv(&[-1, 0]),
            ratv(&[0, -1]),
            ratv(&[-1, -1]),
            ratv(&[-1, -1]),
        ];
        let p = Presentation::from_columns(&cols, ratv(&[0, 0, 2, 2, 3, 10])).unwrap();
        let q = quadrics_from_presentation(&p).with_realm(Realm::Real);
        assert_eq!(
            classify_lagrangian(&q).unwrap(),
            TopologyDescription::SurfaceBundle {
                genus: 5,
                base_torus_dim: 4,
                components: 2,
            }
        );
    }

    #[test]
    fn unbounded_intersection_reports_bundle_structure_only() {
        let q = system(&[&[1, -1]], &[1]);
        assert_eq!(
            classify_lagrangian(&q).unwrap(),
            TopologyDescription::BundleGeneric {
                fiber_dim: 1,
                base_torus_dim: 1,
            }
        );
    }

    #[test]
    fn toric_target_dimensions_and_validity() {
        let gamma = equal_coefficients(5);
        let delta = system(&[&[1, 1, 1, 0, 0], &[0, 0, 1, 1, 1]], &[2, 3]);
        let gamma = QuadricSystem::new(
            gamma.gamma().clone(),
            ratv(&[4]),
            Realm::Real,
        )
        .unwrap();
        let report = toric_target_check(&gamma, &delta).unwrap();
        assert_eq!(report.target_dim, 4);
        assert_eq!(report.core_dim, 2);
        assert!(report.all_delzant());
    }

    #[test]
    fn toric_target_rejects_dependent_pairs() {
        let gamma = equal_coefficients(5);
        assert!(matches!(
            toric_target_check(&gamma, &gamma),
            Err(Error::Degenerate)
        ));
        let smaller = equal_coefficients(4);
        assert!(matches!(
            toric_target_check(&gamma, &smaller),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
