use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{monomial_basis, monomial_basis_len, Monomial, MultiDegree, Polynomial, Ring, SpaceSpec};
use crate::linmat::{global_sections_map, rational_kernel_basis, LinMatrix};
use crate::monad::{Flavor, MonadSpec};
use crate::{Error, Result};

/// `N = prod C(a_i + w_i, a_i) - 1`.
pub fn segre_dimension(space: &SpaceSpec, weights: &MultiDegree) -> Result<usize> {
    space.check_degree(weights)?;
    if !weights.is_ample() {
        return Err(Error::NonAmple(weights.components().to_vec()));
    }
    let h0 = monomial_basis_len(space, weights);
    usize::try_from(h0 - BigInt::from(1))
        .map_err(|_| Error::InvalidSpec("Segre target dimension does not fit in usize".into()))
}

/// Coordinate `j` of `P^N` mapped to the `j`-th monomial of multidegree
/// `weights` in descending lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegreSubstitution {
    space: SpaceSpec,
    weights: MultiDegree,
    images: Vec<Monomial>,
}

impl SegreSubstitution {
    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn weights(&self) -> &MultiDegree {
        &self.weights
    }

    /// `N + 1`.
    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, j: usize) -> &Monomial {
        &self.images[j]
    }

    pub fn images(&self) -> &[Monomial] {
        &self.images
    }
}

pub fn segre_substitution(space: &SpaceSpec, weights: &MultiDegree) -> Result<SegreSubstitution> {
    segre_dimension(space, weights)?;
    Ok(SegreSubstitution {
        space: space.clone(),
        weights: weights.clone(),
        images: monomial_basis(space, weights),
    })
}

/// How the matrices on `P^N` were produced before lifting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    /// Shifted bands of `x_0..x_{n1}` and `y_0..y_{n2}`.
    Band { n1: usize, n2: usize },
    /// `B` a band of all coordinates, `A` seeded random combinations of a
    /// basis of linear syzygies of `B`.
    Generic { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InstanceDoc", into = "InstanceDoc")]
pub struct MonadInstance {
    spec: MonadSpec,
    construction: Construction,
    a: LinMatrix,
    b: LinMatrix,
}

#[derive(Serialize, Deserialize)]
struct InstanceDoc {
    schema: String,
    spec: MonadSpec,
    construction: Construction,
    a: LinMatrix,
    b: LinMatrix,
}

impl From<MonadInstance> for InstanceDoc {
    fn from(m: MonadInstance) -> Self {
        InstanceDoc {
            schema: crate::SCHEMA.to_string(),
            spec: m.spec,
            construction: m.construction,
            a: m.a,
            b: m.b,
        }
    }
}

impl TryFrom<InstanceDoc> for MonadInstance {
    type Error = Error;
    fn try_from(d: InstanceDoc) -> Result<Self> {
        if d.schema != crate::SCHEMA {
            return Err(Error::Parse(format!("unsupported schema {:?}", d.schema)));
        }
        MonadInstance::new(d.spec, d.construction, d.a, d.b)
    }
}

impl MonadInstance {
    pub fn new(spec: MonadSpec, construction: Construction, a: LinMatrix, b: LinMatrix) -> Result<Self> {
        for (name, m, rows, cols) in [("A", &a, spec.beta(), spec.alpha()), ("B", &b, spec.gamma(), spec.beta())] {
            if (m.rows(), m.cols()) != (rows, cols) {
                return Err(Error::ShapeMismatch(format!(
                    "{name} is {}x{}, expected {rows}x{cols}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.space() != spec.space() {
                return Err(Error::DimensionMismatch(format!("{name} lives on {}, spec on {}", m.space(), spec.space())));
            }
            if m.entry_degree() != spec.weights() {
                return Err(Error::DimensionMismatch(format!(
                    "{name} has entry degree {}, weights are {}",
                    m.entry_degree(),
                    spec.weights()
                )));
            }
        }
        Ok(MonadInstance { spec, construction, a, b })
    }

    pub fn spec(&self) -> &MonadSpec {
        &self.spec
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    /// `beta x alpha`.
    pub fn a(&self) -> &LinMatrix {
        &self.a
    }

    /// `gamma x beta`.
    pub fn b(&self) -> &LinMatrix {
        &self.b
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

fn coord(n_vars: usize, i: usize, sign: i64) -> Polynomial {
    Polynomial::monomial(Ring::Rational, Monomial::var(n_vars, i), sign)
}

/// Band matrices on `P^N` with `x = z_0..z_{n1}` and `y = z_{n1+1}..z_N`.
///
/// Row `i` of `B` carries `x_c` in column `i + c` and `y_c` in column
/// `gamma + n1 + i + c`; the rest of the `beta` columns are zero. Column `j`
/// of `A` is the syzygy with shift `s = max(n1, n2) + j`: `-y_{s-p}` in
/// position `p` of the x-band and `x_{s-p}` in position `p` of the y-band.
/// Reversing the index inside each band is what makes `BA = 0` once `B` has
/// more than one row.
pub fn band_monad(
    n_top: usize,
    alpha: usize,
    beta: usize,
    gamma: usize,
    n1: usize,
) -> Result<(LinMatrix, LinMatrix)> {
    if n_top == 0 || n1 > n_top - 1 {
        return Err(Error::InvalidSpec(format!("band split n1={n1} invalid on P^{n_top}")));
    }
    let n2 = n_top - 1 - n1;
    if beta + 1 < 2 * gamma + n_top {
        return Err(Error::InvalidSpec(format!(
            "band needs beta >= 2 gamma + N - 1, got beta={beta}, gamma={gamma}, N={n_top}"
        )));
    }
    if alpha + n1.abs_diff(n2) > gamma {
        return Err(Error::InvalidSpec(format!(
            "band gives at most {} syzygies, alpha={alpha}",
            gamma.saturating_sub(n1.abs_diff(n2))
        )));
    }
    let space = SpaceSpec::projective(n_top)?;
    let nv = n_top + 1;
    let one = MultiDegree(vec![1]);
    let x = |c: usize| n1 + 1 + c;
    let y0 = gamma + n1;
    let mut b = LinMatrix::zeros(&space, Ring::Rational, gamma, beta, one.clone())?;
    for i in 0..gamma {
        for c in 0..=n1 {
            b.set(i, i + c, coord(nv, c, 1))?;
        }
        for c in 0..=n2 {
            b.set(i, y0 + i + c, coord(nv, x(c), 1))?;
        }
    }
    let mut a = LinMatrix::zeros(&space, Ring::Rational, beta, alpha, one)?;
    for j in 0..alpha {
        let s = n1.max(n2) + j;
        for p in 0..gamma + n1 {
            if let Some(d) = s.checked_sub(p).filter(|&d| d <= n2) {
                a.set(p, j, coord(nv, x(d), -1))?;
            }
        }
        for p in 0..gamma + n2 {
            if let Some(d) = s.checked_sub(p).filter(|&d| d <= n1) {
                a.set(y0 + p, j, coord(nv, d, 1))?;
            }
        }
    }
    Ok((a, b))
}

/// The band monad with `n1 = n2 = n` and `alpha = gamma = k` on
/// `P^{2n+1}`; `n = 0` gives the degenerate monad on `P^1`.
pub fn build_floystad(n: usize, k: usize) -> Result<MonadInstance> {
    let spec = MonadSpec::type_i(n, 1, k, 2 * n + 2 * k, k)?;
    let (a, b) = band_monad(2 * n + 1, k, 2 * n + 2 * k, k, n)?;
    MonadInstance::new(spec, Construction::Band { n1: n, n2: n }, a, b)
}

/// Seeded construction on `P^N`: `B` has row `i` equal to
/// `z_0, ..., z_N` in columns `i..=i+N`, and each column of `A` is a random
/// combination, with coefficients in `-3..=3`, of a basis of the linear
/// syzygies of `B`.
pub fn generic_monad(n_top: usize, alpha: usize, beta: usize, gamma: usize, seed: u64) -> Result<(LinMatrix, LinMatrix)> {
    if beta < gamma + n_top {
        return Err(Error::InvalidSpec(format!(
            "generic construction needs beta >= gamma + N, got beta={beta}, gamma={gamma}, N={n_top}"
        )));
    }
    let space = SpaceSpec::projective(n_top)?;
    let nv = n_top + 1;
    let one = MultiDegree(vec![1]);
    let mut b = LinMatrix::zeros(&space, Ring::Rational, gamma, beta, one.clone())?;
    for i in 0..gamma {
        for c in 0..nv {
            b.set(i, i + c, coord(nv, c, 1))?;
        }
    }
    let kernel = rational_kernel_basis(&global_sections_map(&b, &one)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = LinMatrix::zeros(&space, Ring::Rational, beta, alpha, one)?;
    for j in 0..alpha {
        let mut v = vec![BigInt::from(0); beta * nv];
        for basis_vec in &kernel {
            let c: i64 = rng.random_range(-3..=3);
            if c != 0 {
                for (acc, e) in v.iter_mut().zip(basis_vec) {
                    *acc += e * c;
                }
            }
        }
        for r in 0..beta {
            let terms = (0..nv)
                .map(|m| (Monomial::var(nv, m), BigRational::from_integer(v[r * nv + m].clone())));
            a.set(r, j, Polynomial::from_terms(Ring::Rational, nv, terms)?)?;
        }
    }
    Ok((a, b))
}

fn infer_flavor(space: &SpaceSpec, weights: &MultiDegree, alpha: usize, beta: usize, gamma: usize) -> Flavor {
    let dims = space.factor_dims();
    let ones = weights.components().iter().all(|&w| w == 1);
    let m = dims.len();
    if ones && dims.iter().all(|&d| d == 1) && alpha == gamma && m < 32 && beta == (1usize << m) - 2 + 2 * gamma {
        Flavor::P1Power { m, k: gamma }
    } else if ones && dims[0] % 2 == 1 && dims.iter().all(|&d| d == dims[0]) {
        Flavor::TypeI
    } else {
        Flavor::TypeII
    }
}

/// Pull a monad on `P^N` back along the Segre embedding described by `sub`.
pub fn lift_monad(inst: &MonadInstance, sub: &SegreSubstitution) -> Result<MonadInstance> {
    let s = inst.spec();
    if s.space().n_factors() != 1 || s.weights().components() != [1] {
        return Err(Error::DimensionMismatch("lift expects a linear monad on a single P^N".into()));
    }
    if s.space().n_vars() != sub.len() {
        return Err(Error::DimensionMismatch(format!(
            "monad on P^{} but substitution has {} coordinates",
            s.space().dim(),
            sub.len()
        )));
    }
    let (space, w) = (sub.space(), sub.weights());
    let flavor = infer_flavor(space, w, s.alpha(), s.beta(), s.gamma());
    let spec = MonadSpec::new(space.clone(), w.clone(), s.alpha(), s.beta(), s.gamma(), flavor)?;
    lift_into(inst.a(), inst.b(), sub, spec, inst.construction().clone())
}

fn lift_into(a: &LinMatrix, b: &LinMatrix, sub: &SegreSubstitution, spec: MonadSpec, c: Construction) -> Result<MonadInstance> {
    let images: Vec<Polynomial> = sub
        .images()
        .iter()
        .map(|m| Polynomial::monomial(Ring::Rational, m.clone(), 1))
        .collect();
    let a = a.substitute(sub.space(), &images, sub.weights())?;
    let b = b.substitute(sub.space(), &images, sub.weights())?;
    MonadInstance::new(spec, c, a, b)
}

/// Build a monad for `spec`: band matrices on `P^N` when they fit, the
/// seeded generic construction otherwise, then the Segre lift to `X`.
pub fn build_monad(spec: &MonadSpec, seed: u64) -> Result<MonadInstance> {
    let (alpha, beta, gamma, n) = (spec.alpha(), spec.beta(), spec.gamma(), spec.segre_dim());
    if !spec.exists() {
        return Err(Error::InvalidSpec(format!(
            "neither existence condition holds for (alpha, beta, gamma, N) = ({alpha}, {beta}, {gamma}, {n})"
        )));
    }
    let parity = usize::from(n % 2 == 0);
    let ((a, b), construction) = if beta + 1 >= 2 * gamma + n && alpha + parity <= gamma {
        let n1 = n / 2;
        (band_monad(n, alpha, beta, gamma, n1)?, Construction::Band { n1, n2: n - 1 - n1 })
    } else {
        (generic_monad(n, alpha, beta, gamma, seed)?, Construction::Generic { seed })
    };
    let sub = segre_substitution(spec.space(), spec.weights())?;
    lift_into(&a, &b, &sub, spec.clone(), construction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linmat::mat_mul;

    fn var_name(space: &SpaceSpec, m: &Monomial) -> String {
        // alpha_{i,b} for factor i (1-based) and coordinate b
        let mut s = String::new();
        for f in 0..space.n_factors() {
            for (b, v) in space.block(f).enumerate() {
                for _ in 0..m.exponents()[v] {
                    s.push_str(&format!("a{}{}", f + 1, b));
                }
            }
        }
        s
    }

    #[test]
    fn floystad_small_case() {
        let inst = build_floystad(1, 1).unwrap();
        let b: Vec<String> = (0..4).map(|c| inst.b().get(0, c).to_string()).collect();
        assert_eq!(b, ["z0", "z1", "z2", "z3"]);
        let a: Vec<String> = (0..4).map(|r| inst.a().get(r, 0).to_string()).collect();
        assert_eq!(a, ["-z3", "-z2", "z1", "z0"]);
        assert!(mat_mul(inst.b(), inst.a()).unwrap().is_zero());
    }

    #[test]
    fn literal_display_fails_for_two_rows() {
        // B literal, A with -y_{p-j} in position p of column j
        let (_, b) = band_monad(3, 2, 6, 2, 1).unwrap();
        let s = SpaceSpec::projective(3).unwrap();
        let mut a = LinMatrix::zeros(&s, Ring::Rational, 6, 2, MultiDegree(vec![1])).unwrap();
        for j in 0..2 {
            for c in 0..2 {
                a.set(j + c, j, coord(4, 2 + c, -1)).unwrap();
                a.set(3 + j + c, j, coord(4, c, 1)).unwrap();
            }
        }
        let ba = mat_mul(&b, &a).unwrap();
        assert_eq!(ba.get(0, 1).to_string(), "z0*z3 - z1*z2");
    }

    #[test]
    fn floystad_family_composes_to_zero() {
        for n in 0..=3 {
            for k in 1..=3 {
                let inst = build_floystad(n, k).unwrap();
                assert_eq!((inst.b().rows(), inst.b().cols()), (k, 2 * n + 2 * k));
                assert!(mat_mul(inst.b(), inst.a()).unwrap().is_zero(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn segre_dimensions() {
        let p = |d: Vec<usize>| SpaceSpec::new(d).unwrap();
        for m in 1..6 {
            assert_eq!(segre_dimension(&p(vec![1; m]), &MultiDegree(vec![1; m])).unwrap(), (1 << m) - 1);
        }
        assert_eq!(segre_dimension(&p(vec![1, 2]), &MultiDegree(vec![1, 2])).unwrap(), 11);
        assert_eq!(segre_dimension(&p(vec![3]), &MultiDegree(vec![1])).unwrap(), 3);
        assert!(matches!(segre_dimension(&p(vec![1, 1]), &MultiDegree(vec![1, 0])), Err(Error::NonAmple(_))));
    }

    #[test]
    fn segre_tables() {
        let s = SpaceSpec::power(1, 3).unwrap();
        let sub = segre_substitution(&s, &MultiDegree(vec![1, 1, 1])).unwrap();
        assert_eq!(var_name(&s, sub.image(0)), "a10a20a30");
        assert_eq!(var_name(&s, sub.image(4)), "a11a20a30");
        let s = SpaceSpec::new(vec![1, 2]).unwrap();
        let sub = segre_substitution(&s, &MultiDegree(vec![1, 1])).unwrap();
        assert_eq!(sub.images(), monomial_basis(&s, &MultiDegree(vec![1, 1])).as_slice());
        assert_eq!(sub.len(), 6);
    }

    #[test]
    fn lift_of_smallest_band() {
        let s = SpaceSpec::power(1, 2).unwrap();
        let sub = segre_substitution(&s, &MultiDegree(vec![1, 1])).unwrap();
        let lifted = lift_monad(&build_floystad(1, 1).unwrap(), &sub).unwrap();
        let b: Vec<String> = (0..4).map(|c| var_name(&s, lifted.b().get(0, c).terms().next().unwrap().0)).collect();
        assert_eq!(b, ["a10a20", "a10a21", "a11a20", "a11a21"]);
        assert_eq!(lifted.spec().flavor(), Flavor::P1Power { m: 2, k: 1 });
        assert!(mat_mul(lifted.b(), lifted.a()).unwrap().is_zero());
    }

    #[test]
    fn lift_to_three_lines() {
        let s = SpaceSpec::power(1, 3).unwrap();
        let sub = segre_substitution(&s, &MultiDegree(vec![1, 1, 1])).unwrap();
        let lifted = lift_monad(&build_floystad(3, 1).unwrap(), &sub).unwrap();
        let mut seen: Vec<&Monomial> = (0..8).map(|c| lifted.b().get(0, c).terms().next().unwrap().0).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 8);
        assert_eq!(lifted.b().entry_degree(), &MultiDegree(vec![1, 1, 1]));
    }

    #[test]
    fn lift_size_mismatch() {
        let s = SpaceSpec::power(1, 2).unwrap();
        let sub = segre_substitution(&s, &MultiDegree(vec![1, 1])).unwrap();
        assert!(lift_monad(&build_floystad(2, 1).unwrap(), &sub).is_err());
    }

    #[test]
    fn builders_compose_to_zero() {
        let specs = [
            MonadSpec::p1_power(3, 2).unwrap(),
            MonadSpec::type_i(1, 2, 1, 16, 1).unwrap(),
            MonadSpec::type_ii(SpaceSpec::new(vec![1, 2]).unwrap(), MultiDegree(vec![1, 1]), 1, 10, 2).unwrap(),
            MonadSpec::type_ii(SpaceSpec::new(vec![1, 1]).unwrap(), MultiDegree(vec![1, 1]), 3, 8, 1).unwrap(),
        ];
        for spec in &specs {
            let inst = build_monad(spec, 7).unwrap();
            assert!(mat_mul(inst.b(), inst.a()).unwrap().is_zero(), "{spec:?}");
        }
        assert!(matches!(build_monad(&specs[3], 7).unwrap().construction(), Construction::Generic { seed: 7 }));
        assert_eq!(build_monad(&specs[3], 7).unwrap(), build_monad(&specs[3], 7).unwrap());
        let none = MonadSpec::type_ii(SpaceSpec::new(vec![1, 1]).unwrap(), MultiDegree(vec![1, 1]), 1, 3, 1).unwrap();
        assert!(build_monad(&none, 0).is_err());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let inst = build_monad(&MonadSpec::p1_power(2, 2).unwrap(), 0).unwrap();
        let j = inst.to_json().unwrap();
        let back = MonadInstance::from_json(&j).unwrap();
        assert_eq!(back, inst);
        assert_eq!(back.to_json().unwrap(), j);
    }
}
