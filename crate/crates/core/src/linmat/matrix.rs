use serde::{Deserialize, Serialize};

use crate::algebra::{Monomial, MultiDegree, Polynomial, ProjPoint, Ring, SpaceSpec};
use crate::bigser;
use crate::linmat::dense_rank_mod_p;
use crate::{Error, Result};

/// Dense `rows x cols` matrix of forms; every nonzero entry is homogeneous
/// of `entry_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "MatrixDoc", try_from = "MatrixDoc")]
pub struct LinMatrix {
    space: SpaceSpec,
    ring: Ring,
    rows: usize,
    cols: usize,
    entry_degree: MultiDegree,
    entries: Vec<Polynomial>,
}

impl LinMatrix {
    pub fn zeros(
        space: &SpaceSpec,
        ring: Ring,
        rows: usize,
        cols: usize,
        entry_degree: MultiDegree,
    ) -> Result<Self> {
        space.check_degree(&entry_degree)?;
        if rows == 0 || cols == 0 {
            return Err(Error::ShapeMismatch(format!("empty shape {rows}x{cols}")));
        }
        Ok(LinMatrix {
            space: space.clone(),
            ring,
            rows,
            cols,
            entry_degree,
            entries: vec![Polynomial::zero(ring, space.n_vars()); rows * cols],
        })
    }

    /// Build from row-major entries, checking homogeneity.
    pub fn from_entries(
        space: &SpaceSpec,
        ring: Ring,
        rows: usize,
        cols: usize,
        entry_degree: MultiDegree,
        entries: Vec<Polynomial>,
    ) -> Result<Self> {
        let mut m = Self::zeros(space, ring, rows, cols, entry_degree)?;
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i / cols, i % cols, e)?;
        }
        Ok(m)
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) -> Result<()> {
        if p.ring() != self.ring {
            return Err(Error::RingMismatch(p.ring().to_string(), self.ring.to_string()));
        }
        if p.n_vars() != self.space.n_vars() {
            return Err(Error::DimensionMismatch(format!(
                "entry has {} variables, space has {}",
                p.n_vars(),
                self.space.n_vars()
            )));
        }
        if !p.is_homogeneous_of(&self.space, &self.entry_degree) {
            return Err(Error::DimensionMismatch(format!(
                "entry {p} is not homogeneous of degree {}",
                self.entry_degree
            )));
        }
        if r >= self.rows || c >= self.cols {
            return Err(Error::ShapeMismatch(format!("({r},{c}) outside {}x{}", self.rows, self.cols)));
        }
        self.entries[r * self.cols + c] = p;
        Ok(())
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry_degree(&self) -> &MultiDegree {
        &self.entry_degree
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> LinMatrix {
        let mut t = LinMatrix::zeros(&self.space, self.ring, self.cols, self.rows, self.entry_degree.clone())
            .expect("shape already validated");
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    /// Copy of the matrix with column `c` appended again at the end.
    pub fn with_duplicated_column(&self, c: usize) -> LinMatrix {
        let mut out = LinMatrix::zeros(&self.space, self.ring, self.rows, self.cols + 1, self.entry_degree.clone())
            .expect("shape already validated");
        for r in 0..self.rows {
            for j in 0..self.cols {
                out.entries[r * (self.cols + 1) + j] = self.get(r, j).clone();
            }
            out.entries[r * (self.cols + 1) + self.cols] = self.get(r, c).clone();
        }
        out
    }

    /// Scalar matrix at a point, entries in `[0, p)`.
    pub fn evaluate_at(&self, pt: &ProjPoint) -> Result<Vec<Vec<u64>>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).evaluate(pt)).collect())
            .collect()
    }

    /// Rank of the scalar matrix `M(pt)` over `F_p`.
    pub fn rank_at_point(&self, pt: &ProjPoint) -> Result<usize> {
        Ok(dense_rank_mod_p(self.evaluate_at(pt)?, pt.modulus()))
    }

    /// Replace variable `i` by `images[i]` in every entry. The images live on
    /// `target` and are homogeneous of `image_degree`; entries of total degree
    /// `e` land in degree `e * image_degree`.
    pub fn substitute(
        &self,
        target: &SpaceSpec,
        images: &[Polynomial],
        image_degree: &MultiDegree,
    ) -> Result<LinMatrix> {
        if self.space.n_factors() != 1 {
            return Err(Error::DimensionMismatch(
                "substitution expects a matrix over a single projective space".into(),
            ));
        }
        let e = self.entry_degree.components()[0];
        let mut out = LinMatrix::zeros(target, self.ring, self.rows, self.cols, image_degree.scale(e))?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).substitute(images)?)?;
            }
        }
        Ok(out)
    }
}

/// Exact symbolic product `B * A`.
pub fn mat_mul(b: &LinMatrix, a: &LinMatrix) -> Result<LinMatrix> {
    if b.cols != a.rows {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} times {}x{}",
            b.rows, b.cols, a.rows, a.cols
        )));
    }
    if b.space != a.space {
        return Err(Error::DimensionMismatch("matrices live on different spaces".into()));
    }
    if b.ring != a.ring {
        return Err(Error::RingMismatch(b.ring.to_string(), a.ring.to_string()));
    }
    let deg = b.entry_degree.add(&a.entry_degree);
    let mut out = LinMatrix::zeros(&b.space, b.ring, b.rows, a.cols, deg)?;
    for i in 0..b.rows {
        for j in 0..a.cols {
            let mut acc = Polynomial::zero(b.ring, b.space.n_vars());
            for k in 0..b.cols {
                let (x, y) = (b.get(i, k), a.get(k, j));
                if !x.is_zero() && !y.is_zero() {
                    acc = acc.add(&x.mul(y)?)?;
                }
            }
            out.set(i, j, acc)?;
        }
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    space: SpaceSpec,
    ring: Ring,
    rows: usize,
    cols: usize,
    entry_degree: MultiDegree,
    entries: Vec<EntryDoc>,
}

#[derive(Serialize, Deserialize)]
struct EntryDoc {
    row: usize,
    col: usize,
    monomial: Monomial,
    #[serde(with = "bigser::rational")]
    coefficient: num_rational::BigRational,
}

impl From<LinMatrix> for MatrixDoc {
    fn from(m: LinMatrix) -> Self {
        let mut entries = Vec::new();
        for r in 0..m.rows {
            for c in 0..m.cols {
                for (mono, coef) in m.get(r, c).terms() {
                    entries.push(EntryDoc {
                        row: r,
                        col: c,
                        monomial: mono.clone(),
                        coefficient: coef.clone(),
                    });
                }
            }
        }
        MatrixDoc {
            space: m.space,
            ring: m.ring,
            rows: m.rows,
            cols: m.cols,
            entry_degree: m.entry_degree,
            entries,
        }
    }
}

impl TryFrom<MatrixDoc> for LinMatrix {
    type Error = Error;
    fn try_from(d: MatrixDoc) -> Result<Self> {
        let mut cells: Vec<Vec<(Monomial, num_rational::BigRational)>> = vec![Vec::new(); d.rows * d.cols];
        for e in d.entries {
            if e.row >= d.rows || e.col >= d.cols {
                return Err(Error::ShapeMismatch(format!("entry ({},{}) out of range", e.row, e.col)));
            }
            cells[e.row * d.cols + e.col].push((e.monomial, e.coefficient));
        }
        let n = d.space.n_vars();
        let entries = cells
            .into_iter()
            .map(|terms| Polynomial::from_terms(d.ring, n, terms))
            .collect::<Result<Vec<_>>>()?;
        LinMatrix::from_entries(&d.space, d.ring, d.rows, d.cols, d.entry_degree, entries)
    }
}
