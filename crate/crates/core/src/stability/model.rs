use crate::curve_model::{connected_by, proper_subsets, FiberGraph, Polarization};

use super::{SheafClass, SingularPointKind, StabilityError};

/// How the components of the curve carrying the line bundle meet.
#[derive(Debug, Clone)]
enum Junction {
    /// Pairwise intersection numbers; every point of contact is a node or a
    /// tangency counted with multiplicity.
    Pairwise(Vec<Vec<u32>>),
    /// All components pass through one seminormal point, as the coordinate
    /// axes do in affine space. Any two of them meet there, and the ideal of
    /// the rest cuts a reduced point on each part.
    SharedPoint,
}

/// A line bundle on a curve of rational components, restricted to a support.
///
/// Locally free classes live on the fiber itself. A non-locally-free class is
/// the pushforward of a line bundle from a partial resolution of one singular
/// point, and everything about its subsheaves can be computed upstairs:
/// resolving a node removes one unit of intersection between its two
/// branches, while resolving the tacnode of `III` or the planar triple point of
/// `IV` leaves all components through a single seminormal point.
#[derive(Debug, Clone)]
pub(crate) struct LocalModel {
    junction: Junction,
    /// Number of components of the ambient fiber.
    ambient: usize,
    /// Whether `χ(O)` of the full support is the genus-1 value 0.
    genus_one: bool,
    support: Vec<usize>,
    /// Indexed by ambient component; entries outside `support` are unused.
    degrees: Vec<i64>,
}

impl LocalModel {
    pub(crate) fn for_class(g: &FiberGraph, class: &SheafClass) -> Result<Self, StabilityError> {
        let n = g.component_count();
        let pairwise = || {
            if g.intersections.is_empty() {
                vec![vec![0; n]; n]
            } else {
                g.intersections.clone()
            }
        };
        let (junction, genus_one) = match class {
            SheafClass::LineBundle(_) => (Junction::Pairwise(pairwise()), true),
            SheafClass::NodalTorsionFree { node, .. } => {
                let node = g
                    .nodes()
                    .get(*node)
                    .copied()
                    .ok_or(StabilityError::NoSuchNode {
                        node: *node,
                        fiber: g.kodaira,
                    })?;
                let mut m = pairwise();
                let (a, b) = node.components;
                if a != b {
                    m[a][b] -= 1;
                    m[b][a] -= 1;
                }
                (Junction::Pairwise(m), false)
            }
            SheafClass::SingularPointDual { point, .. } => match point {
                SingularPointKind::Cusp => (Junction::Pairwise(pairwise()), false),
                SingularPointKind::Tacnode | SingularPointKind::Triple => {
                    (Junction::SharedPoint, false)
                }
            },
        };
        Ok(LocalModel {
            junction,
            ambient: n,
            genus_one,
            support: (0..n).collect(),
            degrees: class.degrees().0.clone(),
        })
    }

    pub(crate) fn support(&self) -> &[usize] {
        &self.support
    }

    fn meets(&self, i: usize, j: usize) -> u32 {
        match &self.junction {
            Junction::Pairwise(m) => {
                if i == j {
                    0
                } else {
                    m[i][j]
                }
            }
            Junction::SharedPoint => u32::from(i != j),
        }
    }

    pub(crate) fn is_connected(&self, indices: &[usize]) -> bool {
        connected_by(indices, |i, j| self.meets(i, j) > 0)
    }

    /// `χ(O_D)` for `D` inside the support.
    pub(crate) fn structure_chi(&self, indices: &[usize]) -> i64 {
        if indices.is_empty() {
            return 0;
        }
        if self.genus_one && indices.len() == self.ambient {
            return 0;
        }
        match &self.junction {
            Junction::Pairwise(m) => {
                let mut internal = 0i64;
                for (a, &i) in indices.iter().enumerate() {
                    for &j in &indices[a + 1..] {
                        internal += m[i][j] as i64;
                    }
                }
                indices.len() as i64 - internal
            }
            Junction::SharedPoint => 1,
        }
    }

    /// Length of the intersection of `D` with the rest of the support.
    pub(crate) fn boundary(&self, indices: &[usize]) -> i64 {
        let rest: Vec<usize> = self
            .support
            .iter()
            .copied()
            .filter(|i| !indices.contains(i))
            .collect();
        if rest.is_empty() || indices.is_empty() {
            return 0;
        }
        match &self.junction {
            Junction::Pairwise(m) => indices
                .iter()
                .flat_map(|&i| rest.iter().map(move |&j| m[i][j] as i64))
                .sum(),
            Junction::SharedPoint => 1,
        }
    }

    pub(crate) fn chi(&self) -> i64 {
        self.support.iter().map(|&i| self.degrees[i]).sum::<i64>() + self.structure_chi(&self.support)
    }

    /// `χ` of the maximal subsheaf supported on `indices`: the bundle twisted
    /// down by its intersection with the rest of the support.
    pub(crate) fn sub_chi(&self, indices: &[usize]) -> i64 {
        indices.iter().map(|&i| self.degrees[i]).sum::<i64>() - self.boundary(indices)
            + self.structure_chi(indices)
    }

    /// The quotient by the subsheaf on the complement of `indices`, i.e. the
    /// restriction of the bundle to `indices`.
    pub(crate) fn restrict(&self, indices: &[usize]) -> LocalModel {
        LocalModel {
            support: indices.to_vec(),
            ..self.clone()
        }
    }

    pub(crate) fn set_degrees(&mut self, degrees: &[i64]) {
        self.degrees.clear();
        self.degrees.extend_from_slice(degrees);
    }

    pub(crate) fn twist(&mut self, pol: &Polarization, n: i64) {
        for (d, &h) in self.degrees.iter_mut().zip(&pol.weights) {
            *d += n * h as i64;
        }
    }

    /// Nonempty proper subsets of the support in lexicographic order,
    /// optionally only the connected ones.
    pub(crate) fn candidate_subcurves(&self, connected_only: bool) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = proper_subsets(self.support.len())
            .map(|local| local.into_iter().map(|k| self.support[k]).collect::<Vec<_>>())
            .filter(|d| !connected_only || self.is_connected(d))
            .collect();
        out.sort();
        out
    }

    /// Connected components of the support.
    pub(crate) fn pieces(&self) -> Vec<Vec<usize>> {
        let mut left = self.support.clone();
        let mut out = Vec::new();
        while let Some(&start) = left.first() {
            let mut piece = vec![start];
            let mut k = 0;
            while k < piece.len() {
                let a = piece[k];
                for &b in &left {
                    if !piece.contains(&b) && self.meets(a, b) > 0 {
                        piece.push(b);
                    }
                }
                k += 1;
            }
            piece.sort_unstable();
            left.retain(|i| !piece.contains(i));
            out.push(piece);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_model::{build_fiber, KodairaType};
    use crate::stability::MultiDegree;

    #[test]
    fn resolving_a_node_of_a_cycle_gives_a_chain() {
        let g = build_fiber(KodairaType::I(4)).unwrap();
        let class = SheafClass::NodalTorsionFree {
            node: 0,
            degrees: MultiDegree(vec![-1, 0, 0, 0]),
        };
        let model = LocalModel::for_class(&g, &class).unwrap();
        assert_eq!(model.structure_chi(&[0, 1, 2, 3]), 1);
        assert!(!model.is_connected(&[0, 1]));
        assert!(model.is_connected(&[1, 2, 3, 0]));
        assert_eq!(model.chi(), 0);
    }

    #[test]
    fn shared_point_subcurves_all_have_genus_zero() {
        let g = build_fiber(KodairaType::IV).unwrap();
        let class = SheafClass::SingularPointDual {
            point: SingularPointKind::Triple,
            degrees: MultiDegree(vec![-1, 0, 0]),
        };
        let model = LocalModel::for_class(&g, &class).unwrap();
        assert_eq!(model.chi(), 0);
        for d in model.candidate_subcurves(true) {
            assert_eq!(model.structure_chi(&d), 1);
            assert_eq!(model.boundary(&d), 1);
        }
    }

    #[test]
    fn line_bundle_on_irreducible_fiber_has_genus_one_structure() {
        let g = build_fiber(KodairaType::I(1)).unwrap();
        let model =
            LocalModel::for_class(&g, &SheafClass::LineBundle(MultiDegree(vec![0]))).unwrap();
        assert_eq!(model.chi(), 0);
    }

    #[test]
    fn pieces_split_disconnected_support() {
        let g = build_fiber(KodairaType::I(5)).unwrap();
        let model =
            LocalModel::for_class(&g, &SheafClass::LineBundle(MultiDegree::zero(5))).unwrap();
        let r = model.restrict(&[0, 2, 3]);
        assert_eq!(r.pieces(), vec![vec![0], vec![2, 3]]);
    }
}
