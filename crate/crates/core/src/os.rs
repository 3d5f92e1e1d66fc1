//! Orlik-Solomon algebras with broken-circuit bases and the Aomoto complex
//! (left multiplication by the weight one-form), plus the generic
//! arrangement rank suite and the local-model independence certificates for
//! divisor systems.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{lattice, Arrangement, ArrangementKind, Hyperplane};
use crate::error::{usage, Result};
use crate::linsys::{DivisorSystem, HypothesisReport};
use crate::matrix::{det, rref_scalar, solve_scalar, Matrix};
use crate::scalar::{Field, Rat, Scalar};
use crate::util::{binomial, combinations};

/// Integer combination of no-broken-circuit monomials.
pub type LinComb = BTreeMap<Vec<u8>, i64>;

/// The Orlik-Solomon algebra of an arrangement with a fixed linear order on
/// hyperplanes. Bases are the no-broken-circuit monomials of feasible
/// independent subsets; arbitrary monomials are straightened onto them by
/// circuit rewriting.
pub struct OSAlgebra {
    arrangement: Arrangement,
    /// order[k] = original hyperplane index of ordered element k.
    order: Vec<usize>,
    rank: usize,
    /// Per degree, the sorted nbc tuples in ordered labels.
    nbc: Vec<Vec<Vec<u8>>>,
}

fn sort_with_sign(mut t: Vec<u8>) -> Option<(Vec<u8>, i64)> {
    let mut sign = 1i64;
    // Insertion sort, counting swaps.
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            t.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if t.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((t, sign))
}

impl OSAlgebra {
    fn normal(&self, label: u8) -> &[Scalar] {
        &self.arrangement.hyperplanes()[self.order[label as usize]].normal
    }

    fn offset(&self, label: u8) -> &Scalar {
        &self.arrangement.hyperplanes()[self.order[label as usize]].offset
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nbc_basis(&self, degree: usize) -> &[Vec<u8>] {
        &self.nbc[degree]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.nbc.iter().map(Vec::len).collect()
    }

    /// Intersection of the labelled hyperplanes is nonempty.
    fn feasible(&self, tuple: &[u8]) -> bool {
        if tuple.is_empty() {
            return true;
        }
        let rows: Vec<Vec<Scalar>> = tuple.iter().map(|&l| self.normal(l).to_vec()).collect();
        let rhs: Vec<Scalar> = tuple.iter().map(|&l| self.offset(l).clone()).collect();
        solve_scalar(&Matrix::from_rows(rows), &rhs).is_some()
    }

    fn normals_rank(&self, tuple: &[u8]) -> usize {
        if tuple.is_empty() {
            return 0;
        }
        let rows: Vec<Vec<Scalar>> = tuple.iter().map(|&l| self.normal(l).to_vec()).collect();
        let mut m = Matrix::from_rows(rows);
        rref_scalar(&mut m).len()
    }

    fn independent(&self, tuple: &[u8]) -> bool {
        self.normals_rank(tuple) == tuple.len()
    }

    /// The unique circuit {e} cup D with D inside `pool` (independent),
    /// provided e lies in the span of `pool` and the circuit is feasible.
    fn circuit_through(&self, e: u8, pool: &[u8]) -> Option<Vec<u8>> {
        if pool.is_empty() {
            return None;
        }
        let cols = Matrix::from_rows(
            (0..self.normal(e).len())
                .map(|r| pool.iter().map(|&l| self.normal(l)[r].clone()).collect())
                .collect(),
        );
        let coeffs = solve_scalar(&cols, self.normal(e))?;
        let support: Vec<u8> = pool
            .iter()
            .zip(&coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&l, _)| l)
            .collect();
        let mut circuit = support;
        circuit.push(e);
        circuit.sort_unstable();
        self.feasible(&circuit).then_some(circuit)
    }

    /// Smallest absent element whose fundamental circuit breaks inside the
    /// tuple, if any. The tuple must be independent and feasible.
    fn broken_circuit_in(&self, tuple: &[u8]) -> Option<Vec<u8>> {
        let max = *tuple.last()?;
        for e in 0..max {
            if tuple.contains(&e) {
                continue;
            }
            let greater: Vec<u8> = tuple.iter().copied().filter(|&x| x > e).collect();
            if greater.is_empty() {
                continue;
            }
            if let Some(c) = self.circuit_through(e, &greater) {
                return Some(c);
            }
        }
        None
    }

    fn is_nbc(&self, tuple: &[u8]) -> bool {
        self.feasible(tuple) && self.independent(tuple) && self.broken_circuit_in(tuple).is_none()
    }

    /// Straighten a monomial (distinct labels in any order) onto the nbc
    /// basis.
    pub fn reduce(&self, tuple: &[u8]) -> LinComb {
        let mut out = LinComb::new();
        let Some(start) = sort_with_sign(tuple.to_vec()) else {
            return out;
        };
        let mut stack: Vec<(Vec<u8>, i64)> = vec![start];
        while let Some((t, c)) = stack.pop() {
            if !self.feasible(&t) || !self.independent(&t) {
                continue;
            }
            let Some(circuit) = self.broken_circuit_in(&t) else {
                *out.entry(t).or_insert(0) += c;
                continue;
            };
            // circuit = {c0 < c1 < .. < cq}, c0 absent from t, the rest in t.
            let c0 = circuit[0];
            let body: Vec<u8> = circuit[1..].to_vec();
            let rest: Vec<u8> = t.iter().copied().filter(|x| !body.contains(x)).collect();
            // e_t = split_sign * e_body ^ e_rest.
            let mut concat = body.clone();
            concat.extend_from_slice(&rest);
            let (_, split_sign) = sort_with_sign(concat).expect("t has distinct labels");
            // e_body = sum_{j>=1} (-1)^(j+1) e_{circuit minus c_j}.
            for j in 1..circuit.len() {
                let mut replaced: Vec<u8> = circuit
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, &l)| l)
                    .collect();
                replaced.extend_from_slice(&rest);
                let Some((sorted, merge_sign)) = sort_with_sign(replaced) else {
                    continue;
                };
                let term_sign = if j % 2 == 1 { 1 } else { -1 };
                stack.push((sorted, c * split_sign * term_sign * merge_sign));
            }
            let _ = c0;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Wedge a single generator onto a monomial, straightened.
    pub fn wedge_generator(&self, label: u8, tuple: &[u8]) -> LinComb {
        let mut concat = vec![label];
        concat.extend_from_slice(tuple);
        let Some((sorted, sign)) = sort_with_sign(concat) else {
            return LinComb::new();
        };
        let mut out = self.reduce(&sorted);
        if sign < 0 {
            for v in out.values_mut() {
                *v = -*v;
            }
        }
        out
    }

    /// The degree-lowering derivation on a monomial.
    pub fn derivation(&self, tuple: &[u8]) -> LinComb {
        let mut out = LinComb::new();
        for k in 0..tuple.len() {
            let omitted: Vec<u8> = tuple
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, &l)| l)
                .collect();
            let sign = if k % 2 == 0 { 1 } else { -1 };
            for (mono, c) in self.reduce(&omitted) {
                let e = out.entry(mono).or_insert(0);
                *e += sign * c;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Coordinates of a combination in the nbc basis of the given degree.
    pub fn to_vector(&self, degree: usize, comb: &LinComb) -> Vec<Scalar> {
        let field = self.arrangement.field();
        let basis = &self.nbc[degree];
        let mut v = vec![field.zero(); basis.len()];
        for (mono, c) in comb {
            let pos = basis
                .binary_search(mono)
                .expect("reduced combination uses nbc monomials");
            v[pos] = v[pos].add(&field.integer(*c));
        }
        v
    }
}

/// Build the Orlik-Solomon algebra, verifying the nbc dimensions against
/// the lattice Whitney numbers and the circuit relations against the
/// straightening.
pub fn build_os(arrangement: &Arrangement, order: Option<Vec<usize>>) -> Result<OSAlgebra> {
    let n = arrangement.len();
    let order = match order {
        Some(o) => {
            let mut sorted = o.clone();
            sorted.sort_unstable();
            if sorted != (0..n).collect::<Vec<_>>() {
                return Err(usage("order must be a permutation of the hyperplane indices"));
            }
            o
        }
        None => (0..n).collect(),
    };
    if n > 127 {
        return Err(usage("too many hyperplanes for the label encoding"));
    }
    let lat = lattice(arrangement)?;
    let rank = arrangement.rank(&lat);
    let mut os = OSAlgebra {
        arrangement: arrangement.clone(),
        order,
        rank,
        nbc: Vec::new(),
    };
    let mut nbc: Vec<Vec<Vec<u8>>> = Vec::with_capacity(rank + 1);
    for k in 0..=rank {
        let mut level: Vec<Vec<u8>> = Vec::new();
        for combo in combinations(n, k) {
            let tuple: Vec<u8> = combo.iter().map(|&i| i as u8).collect();
            if os.is_nbc(&tuple) {
                level.push(tuple);
            }
        }
        level.sort();
        nbc.push(level);
    }
    os.nbc = nbc;
    // Dimension cross-check: nbc counts match unsigned Whitney numbers.
    let whitney = lat.whitney_numbers();
    for (k, level) in os.nbc.iter().enumerate() {
        if level.len() as u64 != whitney[k] {
            return Err(usage(format!(
                "nbc count {} at degree {k} disagrees with the Whitney number {}",
                level.len(),
                whitney[k]
            )));
        }
    }
    // Relation check: the derivation of every circuit monomial straightens
    // to zero.
    for size in 2..=(rank + 1).min(n) {
        for combo in combinations(n, size) {
            let tuple: Vec<u8> = combo.iter().map(|&i| i as u8).collect();
            if !os.feasible(&tuple) || os.independent(&tuple) {
                continue;
            }
            let proper_independent = (0..tuple.len()).all(|k| {
                let sub: Vec<u8> = tuple
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != k)
                    .map(|(_, &l)| l)
                    .collect();
                os.independent(&sub)
            });
            if !proper_independent {
                continue;
            }
            if !os.derivation(&tuple).is_empty() {
                return Err(usage("circuit relation fails to straighten to zero"));
            }
        }
    }
    Ok(os)
}

/// The Aomoto complex: the OS algebra with differential left wedge by the
/// weight one-form.
pub struct AomotoComplex {
    pub os: OSAlgebra,
    /// Weights in original hyperplane order.
    pub weights: Vec<Scalar>,
    /// differentials[k] maps degree k to degree k+1.
    pub differentials: Vec<Matrix<Scalar>>,
}

pub fn aomoto_complex(os: OSAlgebra, weights: Vec<Scalar>) -> Result<AomotoComplex> {
    if weights.len() != os.arrangement.len() {
        return Err(usage("one weight per hyperplane required"));
    }
    let field = os.arrangement.field().clone();
    let rank = os.rank;
    let mut differentials = Vec::with_capacity(rank + 1);
    for k in 0..=rank {
        let cols = os.nbc[k].len();
        let rows = if k + 1 <= rank { os.nbc[k + 1].len() } else { 0 };
        let mut data = vec![vec![field.zero(); cols]; rows];
        if rows > 0 {
            for (c, mono) in os.nbc[k].iter().enumerate() {
                for label in 0..os.arrangement.len() as u8 {
                    let w = &weights[os.order[label as usize]];
                    if w.is_zero() {
                        continue;
                    }
                    for (out_mono, coeff) in os.wedge_generator(label, mono) {
                        let r = os.nbc[k + 1]
                            .binary_search(&out_mono)
                            .expect("straightened monomial");
                        data[r][c] = data[r][c].add(&w.mul(&field.integer(coeff)));
                    }
                }
            }
        }
        differentials.push(Matrix::from_rows(data));
    }
    let complex = AomotoComplex {
        os,
        weights,
        differentials,
    };
    // Square-zero check: consecutive differentials compose to zero.
    for k in 0..rank {
        let d0 = &complex.differentials[k];
        let d1 = &complex.differentials[k + 1];
        for c in 0..d0.cols() {
            let col: Vec<Scalar> = (0..d0.rows()).map(|r| d0.at(r, c).clone()).collect();
            if d1.rows() == 0 {
                continue;
            }
            let composed = crate::matrix::mat_vec(d1, &col);
            if composed.iter().any(|x| !x.is_zero()) {
                return Err(usage("weight one-form does not square to zero"));
            }
        }
    }
    Ok(complex)
}

impl AomotoComplex {
    pub fn dims(&self) -> Vec<usize> {
        self.os.dims()
    }

    fn rank_of(&self, k: usize) -> usize {
        let d = &self.differentials[k];
        if d.rows() == 0 || d.cols() == 0 {
            return 0;
        }
        let mut m = d.clone();
        rref_scalar(&mut m).len()
    }

    /// Exact cohomology ranks per degree 0..=rank.
    pub fn cohomology_ranks(&self) -> Vec<usize> {
        let dims = self.dims();
        (0..dims.len())
            .map(|k| {
                let d_k = self.rank_of(k);
                let d_prev = if k == 0 { 0 } else { self.rank_of(k - 1) };
                dims[k] - d_k - d_prev
            })
            .collect()
    }

    /// Image generators of d_{k-1} as column vectors in degree k.
    fn image_columns(&self, k: usize) -> Vec<Vec<Scalar>> {
        if k == 0 {
            return Vec::new();
        }
        let d = &self.differentials[k - 1];
        (0..d.cols())
            .map(|c| (0..d.rows()).map(|r| d.at(r, c).clone()).collect())
            .collect()
    }

    /// Are the given degree-k vectors independent modulo the coboundaries?
    pub fn independent_mod_coboundaries(&self, k: usize, vectors: &[Vec<Scalar>]) -> bool {
        if vectors.is_empty() {
            return true;
        }
        let field = self.os.arrangement.field().clone();
        let dim = self.dims()[k];
        let image = self.image_columns(k);
        let rank_of = |cols: &[Vec<Scalar>]| -> usize {
            if cols.is_empty() {
                return 0;
            }
            let rows: Vec<Vec<Scalar>> = (0..dim)
                .map(|r| cols.iter().map(|c| c[r].clone()).collect())
                .collect();
            let mut m = Matrix::from_rows(rows);
            rref_scalar(&mut m).len()
        };
        let image_rank = rank_of(&image);
        let mut all = image;
        all.extend(vectors.iter().cloned());
        let _ = field;
        rank_of(&all) == image_rank + vectors.len()
    }

    /// Is the degree-k vector a cocycle?
    pub fn is_cocycle(&self, k: usize, v: &[Scalar]) -> bool {
        let d = &self.differentials[k];
        if d.rows() == 0 {
            return true;
        }
        crate::matrix::mat_vec(d, v).iter().all(Scalar::is_zero)
    }
}

/// Aomoto cohomology ranks of a weighted arrangement in the input order.
pub fn aomoto_cohomology(arrangement: &Arrangement, weights: Vec<Scalar>) -> Result<Vec<usize>> {
    let os = build_os(arrangement, None)?;
    let complex = aomoto_complex(os, weights)?;
    Ok(complex.cohomology_ranks())
}

/// Integer shift of a rational weight vector; the shift must sum to zero.
pub fn shift_weight(weights: &[Rat], shift: &[i64]) -> Result<Vec<Rat>> {
    if weights.len() != shift.len() {
        return Err(usage("weight and shift lengths differ"));
    }
    if shift.iter().sum::<i64>() != 0 {
        return Err(usage("integer shift must sum to zero"));
    }
    Ok(weights
        .iter()
        .zip(shift)
        .map(|(w, &k)| w + crate::scalar::rat_int(k))
        .collect())
}

#[derive(Debug, Clone)]
pub struct GenericLemmaReport {
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub expected: u64,
    pub vanishing_outside: bool,
    pub ranks_match: bool,
    pub top_family_is_basis: bool,
    pub bracket_family_is_basis: bool,
    pub draws: u32,
}

impl GenericLemmaReport {
    pub fn all_hold(&self) -> bool {
        self.vanishing_outside
            && self.ranks_match
            && self.top_family_is_basis
            && self.bracket_family_is_basis
    }
}

/// Draw a random generic central arrangement of s hyperplanes in n-space
/// (every n x n normal minor nonzero), run the Aomoto complex at the given
/// weights and verify the generic rank statement together with its two
/// distinguished bases.
pub fn generic_lemma_suite(
    s: usize,
    n: usize,
    weights: &[Rat],
    seed: u64,
) -> Result<GenericLemmaReport> {
    if !(1 < n && n < s) {
        return Err(usage("need 1 < n < s"));
    }
    if weights.len() != s {
        return Err(usage("one weight per hyperplane required"));
    }
    let total: Rat = weights.iter().cloned().sum();
    if !total.is_zero() {
        return Err(usage("weights must sum to zero"));
    }
    if weights[0].is_integer() || weights[s - 1].is_integer() {
        return Err(usage(
            "first and last weights must be non-integral (reorder or shift the weights)",
        ));
    }
    let field = Field::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draws = 0;
    let arrangement = loop {
        draws += 1;
        if draws > 200 {
            return Err(usage("failed to draw a generic arrangement in 200 attempts"));
        }
        let normals: Vec<Vec<Scalar>> = (0..s)
            .map(|_| {
                (0..n)
                    .map(|_| field.integer(rng.gen_range(-9..=9)))
                    .collect()
            })
            .collect();
        if normals.iter().any(|v| v.iter().all(Scalar::is_zero)) {
            continue;
        }
        let generic = combinations(s, n).into_iter().all(|combo| {
            let m = Matrix::from_rows(
                (0..n)
                    .map(|r| combo.iter().map(|&c| normals[c][r].clone()).collect())
                    .collect(),
            );
            !det(&m).is_zero()
        });
        if !generic {
            continue;
        }
        let hps: Vec<Hyperplane> = normals
            .into_iter()
            .map(|normal| Hyperplane {
                normal,
                offset: field.zero(),
            })
            .collect();
        match Arrangement::new(field.clone(), n, ArrangementKind::Central, hps) {
            Ok(a) => break a,
            Err(_) => continue,
        }
    };
    let os = build_os(&arrangement, None)?;
    let scalar_weights: Vec<Scalar> = weights
        .iter()
        .map(|w| Scalar::from_rat(field.clone(), w.clone()))
        .collect();
    let complex = aomoto_complex(os, scalar_weights)?;
    let dims = complex.dims();
    let ranks = complex.cohomology_ranks();
    let expected = binomial(s as u64 - 2, n as u64 - 1);
    let vanishing_outside = ranks
        .iter()
        .enumerate()
        .all(|(k, &r)| k == n || k == n - 1 || r == 0);
    let ranks_match = ranks[n - 1] as u64 == expected && ranks[n] as u64 == expected;

    // Family for the top degree: e_0 ^ e_{i_1} ^ .. ^ e_{i_{n-1}} with
    // 0 < i_1 < .. < i_{n-1} < s-1 (zero-based interior indices).
    let interior: Vec<u8> = (1..s - 1).map(|i| i as u8).collect();
    let mut top_vectors = Vec::new();
    let mut bracket_vectors = Vec::new();
    let mut bracket_cocycles = true;
    for combo in combinations(interior.len(), n - 1) {
        let mut tuple = vec![0u8];
        tuple.extend(combo.iter().map(|&i| interior[i]));
        top_vectors.push(complex.os.to_vector(n, &complex.os.reduce(&tuple)));
        let bracket = complex.os.derivation(&tuple);
        let v = complex.os.to_vector(n - 1, &bracket);
        if !complex.is_cocycle(n - 1, &v) {
            bracket_cocycles = false;
        }
        bracket_vectors.push(v);
    }
    let top_family_is_basis = top_vectors.len() == ranks[n]
        && complex.independent_mod_coboundaries(n, &top_vectors);
    let bracket_family_is_basis = bracket_cocycles
        && bracket_vectors.len() == ranks[n - 1]
        && complex.independent_mod_coboundaries(n - 1, &bracket_vectors);
    Ok(GenericLemmaReport {
        dims,
        ranks,
        expected,
        vanishing_outside,
        ranks_match,
        top_family_is_basis,
        bracket_family_is_basis,
        draws,
    })
}

#[derive(Debug, Clone)]
pub struct LocalCertificate {
    pub family_size: usize,
    pub cocycles_ok: bool,
    pub independent: bool,
    /// Present when s < m: the degree-n family mapped to pure wedges.
    pub top_family: Option<(usize, bool)>,
    pub aomoto_ranks: Vec<usize>,
}

impl LocalCertificate {
    pub fn certified(&self) -> bool {
        self.cocycles_ok && self.independent && self.top_family.map_or(true, |(_, ok)| ok)
    }
}

/// Certify the distinguished cocycle family in the local model at the base
/// point: the restricted brackets must be cocycles of the Aomoto complex of
/// the arrangement cut out by the coordinate matrix, independent modulo
/// coboundaries.
pub fn restrict_and_certify(
    sys: &DivisorSystem,
    report: &HypothesisReport,
) -> Result<LocalCertificate> {
    if !report.admissible() {
        return Err(usage("hypotheses do not hold"));
    }
    if sys.base_point().is_none() {
        return Err(usage("local certification needs a base point"));
    }
    let s = sys.s();
    let n = sys.n();
    let weights: Vec<Scalar> = sys.weights()[..s].to_vec();
    for w in &weights {
        if w.as_rational().is_none() {
            return Err(usage("local certification needs rational weights"));
        }
    }
    if weights[0].is_integer() || weights[s - 1].is_integer() {
        return Err(usage(
            "first and last member weights must be non-integral; reorder the members or apply an \
             integer shift with zero sum",
        ));
    }
    let field = sys.field().clone();
    let a = &report.matrix_a;
    let hps: Vec<Hyperplane> = (0..s)
        .map(|j| Hyperplane {
            normal: (0..n).map(|i| a.at(i, j).clone()).collect(),
            offset: field.zero(),
        })
        .collect();
    let local = Arrangement::new(field.clone(), n, ArrangementKind::Central, hps)?;
    let os = build_os(&local, None)?;
    let complex = aomoto_complex(os, weights)?;
    let ranks = complex.cohomology_ranks();

    let interior: Vec<u8> = (1..s - 1).map(|i| i as u8).collect();
    let mut vectors = Vec::new();
    let mut cocycles_ok = true;
    let mut top_vectors = Vec::new();
    for combo in combinations(interior.len(), n - 1) {
        let mut tuple = vec![0u8];
        tuple.extend(combo.iter().map(|&i| interior[i]));
        let bracket = complex.os.derivation(&tuple);
        let v = complex.os.to_vector(n - 1, &bracket);
        if !complex.is_cocycle(n - 1, &v) {
            cocycles_ok = false;
        }
        vectors.push(v);
        if sys.s() < sys.m() {
            top_vectors.push(complex.os.to_vector(n, &complex.os.reduce(&tuple)));
        }
    }
    let family_size = vectors.len();
    debug_assert_eq!(
        family_size as u64,
        binomial(s as u64 - 2, n as u64 - 1)
    );
    let independent = complex.independent_mod_coboundaries(n - 1, &vectors);
    let top_family = (sys.s() < sys.m()).then(|| {
        let ok = complex.independent_mod_coboundaries(n, &top_vectors);
        (top_vectors.len(), ok)
    });
    Ok(LocalCertificate {
        family_size,
        cocycles_ok,
        independent,
        top_family,
        aomoto_ranks: ranks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn q() -> Field {
        Field::rationals()
    }

    fn central(normals: &[&[i64]]) -> Arrangement {
        let hps = normals
            .iter()
            .map(|v| Hyperplane {
                normal: v.iter().map(|&x| q().integer(x)).collect(),
                offset: q().zero(),
            })
            .collect();
        Arrangement::new(q(), normals[0].len(), ArrangementKind::Central, hps).unwrap()
    }

    #[test]
    fn boolean_os_is_exterior_algebra() {
        let arr = central(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let os = build_os(&arr, None).unwrap();
        assert_eq!(os.dims(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn generic_central_lines_os_dims() {
        // s central generic lines in C^2: dims (1, s, s-1).
        let arr = central(&[&[1, 0], &[0, 1], &[1, 1], &[1, -1], &[1, 2]]);
        let os = build_os(&arr, None).unwrap();
        assert_eq!(os.dims(), vec![1, 5, 4]);
    }

    #[test]
    fn straightening_respects_circuit_relations() {
        let arr = central(&[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]);
        let os = build_os(&arr, None).unwrap();
        // e1 ^ e2 rewrites into nbc monomials through the circuit {0,1,2}.
        let reduced = os.reduce(&[1, 2]);
        let mut expected = LinComb::new();
        expected.insert(vec![0, 2], 1);
        expected.insert(vec![0, 1], -1);
        assert_eq!(reduced, expected);
        // Dependent monomials die.
        assert!(os.reduce(&[0, 1, 2]).is_empty());
    }

    #[test]
    fn parallel_affine_lines_keep_both_generators() {
        // Two parallel affine lines: no circuit, dims (1, 2).
        let hps = vec![
            Hyperplane {
                normal: vec![q().one()],
                offset: q().zero(),
            },
            Hyperplane {
                normal: vec![q().one()],
                offset: q().one(),
            },
        ];
        let arr = Arrangement::new(q(), 1, ArrangementKind::Affine, hps).unwrap();
        let os = build_os(&arr, None).unwrap();
        assert_eq!(os.dims(), vec![1, 2]);
        // The infeasible pair vanishes.
        assert!(os.reduce(&[0, 1]).is_empty());
    }

    #[test]
    fn aomoto_generic_four_lines() {
        let arr = central(&[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]);
        let weights = vec![
            Scalar::from_rat(q(), rat(1, 2)),
            Scalar::from_rat(q(), rat(1, 3)),
            Scalar::from_rat(q(), rat(-1, 3)),
            Scalar::from_rat(q(), rat(-1, 2)),
        ];
        let ranks = aomoto_cohomology(&arr, weights).unwrap();
        assert_eq!(ranks, vec![0, 2, 2]);
    }

    #[test]
    fn aomoto_trivial_weight_gives_os_dims() {
        let arr = central(&[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]);
        let weights = vec![q().zero(); 4];
        let ranks = aomoto_cohomology(&arr, weights).unwrap();
        assert_eq!(ranks, vec![1, 4, 3]);
    }

    #[test]
    fn euler_characteristic_constraint() {
        use rand::{Rng, SeedableRng};
        let arr = central(&[&[1, 0], &[0, 1], &[1, 2], &[2, 1], &[1, -1]]);
        let os_dims = build_os(&arr, None).unwrap().dims();
        let os_euler: i64 = os_dims
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_000c);
        for _ in 0..20 {
            let mut ws: Vec<i64> = (0..4).map(|_| rng.gen_range(-6..=6)).collect();
            let last: i64 = -ws.iter().sum::<i64>();
            ws.push(last);
            let weights: Vec<Scalar> = ws
                .iter()
                .map(|&w| Scalar::from_rat(q(), rat(w, 7)))
                .collect();
            let ranks = aomoto_cohomology(&arr, weights).unwrap();
            let tw_euler: i64 = ranks
                .iter()
                .enumerate()
                .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
                .sum();
            assert_eq!(tw_euler, os_euler);
        }
    }

    #[test]
    fn weight_shift_utility() {
        let w = vec![rat(3, 2), rat(-1, 2), rat(-1, 1)];
        assert_eq!(shift_weight(&w, &[0, 0, 0]).unwrap(), w);
        let shifted = shift_weight(&w, &[-1, 0, 1]).unwrap();
        assert_eq!(shifted, vec![rat(1, 2), rat(-1, 2), rat(0, 1)]);
        assert!(shift_weight(&w, &[1, 0, 0]).is_err());
    }

    #[test]
    fn generic_lemma_4_2() {
        let weights = vec![rat(1, 2), rat(1, 3), rat(-1, 3), rat(-1, 2)];
        let report = generic_lemma_suite(4, 2, &weights, 0xA0_0001).unwrap();
        assert_eq!(report.expected, 2);
        assert_eq!(report.ranks, vec![0, 2, 2]);
        assert!(report.all_hold());
    }

    #[test]
    fn generic_lemma_rejects_integral_ends() {
        let weights = vec![rat(1, 1), rat(1, 2), rat(-1, 2), rat(-1, 1)];
        assert!(generic_lemma_suite(4, 2, &weights, 1).is_err());
    }

    #[test]
    fn os_derivation_matches_bracket_identities() {
        // The degree-one specialization: derivation brackets of generators
        // satisfy the permutation antisymmetry.
        let arr = central(&[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]);
        let os = build_os(&arr, None).unwrap();
        let a = os.derivation(&[0, 1, 2]);
        let mut b = os.derivation(&[0, 2, 1]);
        // Odd permutation flips the sign.
        for v in b.values_mut() {
            *v = -*v;
        }
        let a_sorted: Vec<_> = a.into_iter().collect();
        let b_sorted: Vec<_> = b.into_iter().collect();
        assert_eq!(a_sorted, b_sorted);
    }
}
