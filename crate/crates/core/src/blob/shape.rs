use std::collections::BTreeSet;
use std::fmt;

use crate::blob::config::{Configuration, Relation, Supports};

/// Polyhedra built from a point by products and cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Polyhedron {
    Point,
    Product(Vec<Polyhedron>),
    Cone(Box<Polyhedron>),
}

impl Polyhedron {
    pub fn dim(&self) -> usize {
        match self {
            Polyhedron::Point => 0,
            Polyhedron::Product(ps) => ps.iter().map(Polyhedron::dim).sum(),
            Polyhedron::Cone(p) => p.dim() + 1,
        }
    }

    /// Number of faces of each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        match self {
            Polyhedron::Point => vec![1],
            Polyhedron::Product(ps) => ps.iter().fold(vec![1], |acc, p| {
                let f = p.f_vector();
                let mut out = vec![0; acc.len() + f.len() - 1];
                for (i, a) in acc.iter().enumerate() {
                    for (j, b) in f.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                out
            }),
            Polyhedron::Cone(p) => {
                let f = p.f_vector();
                let mut out = vec![0; f.len() + 1];
                out[0] = 1;
                for (j, x) in f.iter().enumerate() {
                    out[j] += x;
                    out[j + 1] += x;
                }
                out
            }
        }
    }

    pub fn simplex(k: usize) -> Self {
        (0..k).fold(Polyhedron::Point, |p, _| Polyhedron::Cone(Box::new(p)))
    }

    pub fn cube(k: usize) -> Self {
        Polyhedron::Product(vec![Polyhedron::simplex(1); k])
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Polyhedron::Point => f.write_str("pt"),
            Polyhedron::Product(ps) => {
                f.write_str("(")?;
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" × ")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
            Polyhedron::Cone(p) => write!(f, "cone({p})"),
        }
    }
}

/// Faces of a polyhedron listed explicitly by their vertex sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    pub vertices: usize,
    /// `(dimension, vertex set)`
    pub faces: BTreeSet<(usize, Vec<usize>)>,
}

impl FaceLattice {
    pub fn of(p: &Polyhedron) -> Self {
        match p {
            Polyhedron::Point => FaceLattice { vertices: 1, faces: [(0, vec![0])].into_iter().collect() },
            Polyhedron::Cone(inner) => {
                let base = FaceLattice::of(inner);
                let apex = base.vertices;
                let mut faces = base.faces.clone();
                faces.insert((0, vec![apex]));
                for (d, vs) in &base.faces {
                    let mut v = vs.clone();
                    v.push(apex);
                    faces.insert((d + 1, v));
                }
                FaceLattice { vertices: apex + 1, faces }
            }
            Polyhedron::Product(ps) => ps.iter().fold(FaceLattice::of(&Polyhedron::Point), |acc, q| {
                let other = FaceLattice::of(q);
                let mut faces = BTreeSet::new();
                for (d1, v1) in &acc.faces {
                    for (d2, v2) in &other.faces {
                        let mut vs: Vec<usize> = v1.iter().flat_map(|a| v2.iter().map(move |b| a * other.vertices + b)).collect();
                        vs.sort_unstable();
                        faces.insert((d1 + d2, vs));
                    }
                }
                FaceLattice { vertices: acc.vertices * other.vertices, faces }
            }),
        }
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.faces.iter().map(|(d, _)| *d).max().unwrap_or(0);
        let mut f = vec![0; top + 1];
        for (d, _) in &self.faces {
            f[*d] += 1;
        }
        f
    }
}

/// The polyhedron of a configuration: disjoint blobs multiply, an
/// enclosing blob cones off everything inside it.
pub fn shape(sup: &Supports, config: &Configuration) -> Polyhedron {
    let n = config.len();
    // parent = the next level of the same tower, else the smallest strictly
    // enclosing support's innermost level
    let parent: Vec<Option<usize>> = (0..n)
        .map(|i| {
            let (s, l) = config.entries[i];
            if let Some(j) = config.entries.iter().position(|&e| e == (s, l + 1)) {
                return Some(j);
            }
            config
                .entries
                .iter()
                .enumerate()
                .filter(|&(_, &(t, lt))| lt == 1 && sup.relation(s, t) == Relation::Inside)
                .min_by_key(|&(_, &(t, _))| sup.info(t).site_count())
                .map(|(j, _)| j)
        })
        .collect();
    fn forest(children: &[Vec<usize>], roots: &[usize]) -> Polyhedron {
        let trees: Vec<Polyhedron> = roots.iter().map(|&r| Polyhedron::Cone(Box::new(forest(children, &children[r])))).collect();
        match trees.len() {
            0 => Polyhedron::Point,
            1 => trees.into_iter().next().unwrap(),
            _ => Polyhedron::Product(trees),
        }
    }
    let mut children = vec![Vec::new(); n];
    let mut roots = Vec::new();
    for (i, p) in parent.iter().enumerate() {
        match p {
            Some(j) => children[*j].push(i),
            None => roots.push(i),
        }
    }
    forest(&children, &roots)
}
