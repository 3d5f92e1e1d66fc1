//! Hyperplane arrangement combinatorics: intersection lattices, Moebius
//! values, characteristic polynomials, Zaslavsky chamber counts, coning and
//! deconing, decomposability, dense edges and the beta invariant.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{usage, Result};
use crate::matrix::{nullspace_scalar, rref_scalar, solve_scalar, Matrix};
use crate::scalar::{Field, Scalar};

/// Hard cap for exhaustive flat enumeration.
pub const MAX_HYPERPLANES: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrangementKind {
    Affine,
    Central,
    /// Projective arrangements are stored as their central cones; the
    /// projective reading drops the dimension-zero flat.
    Projective,
}

#[derive(Debug, Clone)]
pub struct Hyperplane {
    /// Nonzero normal vector a with H = { a.x = c }.
    pub normal: Vec<Scalar>,
    pub offset: Scalar,
}

#[derive(Clone)]
pub struct Arrangement {
    field: Field,
    ambient: usize,
    kind: ArrangementKind,
    hyperplanes: Vec<Hyperplane>,
}

fn proportional(a: &[Scalar], ca: &Scalar, b: &[Scalar], cb: &Scalar) -> bool {
    let mut r0 = a.to_vec();
    r0.push(ca.clone());
    let mut r1 = b.to_vec();
    r1.push(cb.clone());
    let mut m = Matrix::from_rows(vec![r0, r1]);
    rref_scalar(&mut m).len() < 2
}

impl Arrangement {
    pub fn new(
        field: Field,
        ambient: usize,
        kind: ArrangementKind,
        hyperplanes: Vec<Hyperplane>,
    ) -> Result<Arrangement> {
        if ambient == 0 {
            return Err(usage("ambient dimension must be positive"));
        }
        for h in &hyperplanes {
            if h.normal.len() != ambient {
                return Err(usage(
                    "normal vector length differs from the ambient dimension",
                ));
            }
            if h.normal.iter().all(Scalar::is_zero) {
                return Err(usage("hyperplane normal must be nonzero"));
            }
            if !matches!(kind, ArrangementKind::Affine) && !h.offset.is_zero() {
                return Err(usage("central and projective hyperplanes must have offset 0"));
            }
        }
        for i in 0..hyperplanes.len() {
            for j in i + 1..hyperplanes.len() {
                if proportional(
                    &hyperplanes[i].normal,
                    &hyperplanes[i].offset,
                    &hyperplanes[j].normal,
                    &hyperplanes[j].offset,
                ) {
                    return Err(usage(format!("hyperplanes {i} and {j} coincide")));
                }
            }
        }
        Ok(Arrangement {
            field,
            ambient,
            kind,
            hyperplanes,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn kind(&self) -> ArrangementKind {
        self.kind
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// Codimension of a minimal nonempty intersection.
    pub fn rank(&self, lattice: &IntersectionLattice) -> usize {
        lattice
            .flats
            .iter()
            .map(|f| self.ambient - f.dim)
            .max()
            .unwrap_or(0)
    }
}

/// A lattice element: a nonempty intersection of hyperplanes, carried with
/// its closed member set and an explicit affine parametrization.
#[derive(Debug, Clone)]
pub struct Flat {
    pub members: BTreeSet<usize>,
    pub dim: usize,
    pub point: Vec<Scalar>,
    pub directions: Vec<Vec<Scalar>>,
}

pub struct IntersectionLattice {
    /// Flats ordered by increasing codimension, ties broken by member set;
    /// index 0 is the ambient space.
    pub flats: Vec<Flat>,
    pub mobius: Vec<i64>,
    /// Covering pairs (lower, upper) by flat index.
    pub covers: Vec<(usize, usize)>,
}

impl IntersectionLattice {
    /// Index of the dimension-zero flat, when present.
    pub fn center(&self) -> Option<usize> {
        self.flats.iter().position(|f| f.dim == 0)
    }

    /// Unsigned Moebius sums per codimension.
    pub fn whitney_numbers(&self) -> Vec<u64> {
        let ambient = self.flats[0].dim;
        let mut w = vec![0u64; ambient + 1];
        for (f, mu) in self.flats.iter().zip(&self.mobius) {
            w[ambient - f.dim] += mu.unsigned_abs();
        }
        w
    }
}

/// Solve the affine system of the given member set; `None` when empty.
fn solve_flat(
    arr: &Arrangement,
    members: &BTreeSet<usize>,
) -> Option<(Vec<Scalar>, Vec<Vec<Scalar>>)> {
    let field = arr.field.clone();
    if members.is_empty() {
        let point = vec![field.zero(); arr.ambient];
        let dirs = (0..arr.ambient)
            .map(|i| {
                let mut v = vec![field.zero(); arr.ambient];
                v[i] = field.one();
                v
            })
            .collect();
        return Some((point, dirs));
    }
    let rows: Vec<Vec<Scalar>> = members
        .iter()
        .map(|&h| arr.hyperplanes[h].normal.clone())
        .collect();
    let rhs: Vec<Scalar> = members
        .iter()
        .map(|&h| arr.hyperplanes[h].offset.clone())
        .collect();
    let m = Matrix::from_rows(rows);
    let point = solve_scalar(&m, &rhs)?;
    let dirs = nullspace_scalar(&m);
    Some((point, dirs))
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = a[0].field().zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc.add(&x.mul(y));
    }
    acc
}

fn contains_flat(h: &Hyperplane, point: &[Scalar], directions: &[Vec<Scalar>]) -> bool {
    if dot(&h.normal, point) != h.offset {
        return false;
    }
    directions.iter().all(|d| dot(&h.normal, d).is_zero())
}

fn closure(arr: &Arrangement, point: &[Scalar], directions: &[Vec<Scalar>]) -> BTreeSet<usize> {
    (0..arr.len())
        .filter(|&h| contains_flat(&arr.hyperplanes[h], point, directions))
        .collect()
}

/// All nonempty intersections with closed member sets, Moebius values and
/// covering relations.
pub fn lattice(arr: &Arrangement) -> Result<IntersectionLattice> {
    if arr.len() > MAX_HYPERPLANES {
        return Err(usage(format!(
            "{} hyperplanes exceed the exhaustive enumeration cap of {MAX_HYPERPLANES}; \
             restrict the arrangement first",
            arr.len()
        )));
    }
    let mut seen: BTreeMap<BTreeSet<usize>, Flat> = BTreeMap::new();
    let (point, dirs) = solve_flat(arr, &BTreeSet::new()).expect("ambient space");
    let ambient = Flat {
        members: BTreeSet::new(),
        dim: arr.ambient,
        point,
        directions: dirs,
    };
    let mut queue = vec![ambient.members.clone()];
    seen.insert(BTreeSet::new(), ambient);
    while let Some(members) = queue.pop() {
        for h in 0..arr.len() {
            if members.contains(&h) {
                continue;
            }
            let mut extended = members.clone();
            extended.insert(h);
            let Some((point, dirs)) = solve_flat(arr, &extended) else {
                continue;
            };
            let closed = closure(arr, &point, &dirs);
            if seen.contains_key(&closed) {
                continue;
            }
            let dim = dirs.len();
            seen.insert(
                closed.clone(),
                Flat {
                    members: closed.clone(),
                    dim,
                    point,
                    directions: dirs,
                },
            );
            queue.push(closed);
        }
    }
    let mut flats: Vec<Flat> = seen.into_values().collect();
    flats.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.members.cmp(&b.members)));
    // Moebius recursion from the ambient space downwards; Y < X in the
    // lattice exactly when members(Y) is a proper subset of members(X).
    let mut mobius = vec![0i64; flats.len()];
    for i in 0..flats.len() {
        if i == 0 {
            mobius[0] = 1;
            continue;
        }
        let mut acc = 0i64;
        for j in 0..i {
            if flats[j].members.is_subset(&flats[i].members) {
                acc += mobius[j];
            }
        }
        mobius[i] = -acc;
    }
    let mut covers = Vec::new();
    for i in 0..flats.len() {
        'upper: for j in 0..flats.len() {
            if i == j
                || !flats[i].members.is_subset(&flats[j].members)
                || flats[i].members == flats[j].members
            {
                continue;
            }
            for (k, flat_k) in flats.iter().enumerate() {
                if k != i
                    && k != j
                    && flats[i].members.is_subset(&flat_k.members)
                    && flats[i].members != flat_k.members
                    && flat_k.members.is_subset(&flats[j].members)
                    && flat_k.members != flats[j].members
                {
                    continue 'upper;
                }
            }
            covers.push((i, j));
        }
    }
    Ok(IntersectionLattice {
        flats,
        mobius,
        covers,
    })
}

/// Integer characteristic polynomial, coefficients by ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly(pub Vec<i64>);

impl CharPoly {
    pub fn eval(&self, x: i64) -> i128 {
        let mut acc: i128 = 0;
        for c in self.0.iter().rev() {
            acc = acc * x as i128 + *c as i128;
        }
        acc
    }

    /// Exact quotient by (t - 1); `None` when (t - 1) does not divide.
    pub fn divide_by_t_minus_1(&self) -> Option<CharPoly> {
        if self.0.is_empty() {
            return None;
        }
        let mut quo = vec![0i64; self.0.len() - 1];
        let mut carry = 0i64;
        for k in (0..self.0.len()).rev() {
            let c = self.0[k] + carry;
            if k == 0 {
                if c != 0 {
                    return None;
                }
                break;
            }
            quo[k - 1] = c;
            carry = c;
        }
        Some(CharPoly(quo))
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<crate::scalar::Rat> =
            self.0.iter().map(|&c| crate::scalar::rat_int(c)).collect();
        write!(f, "{}", crate::scalar::poly_in_t_string(&coeffs))
    }
}

pub fn characteristic_polynomial(arr: &Arrangement, lat: &IntersectionLattice) -> CharPoly {
    let mut coeffs = vec![0i64; arr.ambient + 1];
    for (f, mu) in lat.flats.iter().zip(&lat.mobius) {
        coeffs[f.dim] += mu;
    }
    CharPoly(coeffs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChamberCounts {
    pub regions: u64,
    pub bounded: u64,
}

/// Zaslavsky evaluations over the reals; the field must be Q. Bounded
/// counts are zero for non-essential (in particular central) arrangements.
pub fn chamber_counts(arr: &Arrangement, lat: &IntersectionLattice) -> Result<ChamberCounts> {
    if !arr.field.is_rationals() {
        return Err(usage("chamber counts require rational (real-embeddable) data"));
    }
    let chi = characteristic_polynomial(arr, lat);
    let sign_l = if arr.ambient % 2 == 0 { 1i128 } else { -1 };
    let regions = (sign_l * chi.eval(-1)) as u64;
    let rank = arr.rank(lat);
    let bounded = if rank < arr.ambient {
        0
    } else {
        (sign_l * chi.eval(1)) as u64
    };
    Ok(ChamberCounts { regions, bounded })
}

/// Cone an affine arrangement: one new last coordinate, offsets folded into
/// it, and the hyperplane at infinity appended last.
pub fn cone(arr: &Arrangement) -> Result<Arrangement> {
    if arr.kind != ArrangementKind::Affine {
        return Err(usage("cone takes an affine arrangement"));
    }
    let field = arr.field.clone();
    let ell = arr.ambient;
    let mut hps: Vec<Hyperplane> = arr
        .hyperplanes
        .iter()
        .map(|h| {
            let mut normal = h.normal.clone();
            normal.push(h.offset.neg());
            Hyperplane {
                normal,
                offset: field.zero(),
            }
        })
        .collect();
    let mut infinity = vec![field.zero(); ell + 1];
    infinity[ell] = field.one();
    hps.push(Hyperplane {
        normal: infinity,
        offset: field.zero(),
    });
    Arrangement::new(field, ell + 1, ArrangementKind::Central, hps)
}

/// Decone a central arrangement at the chosen hyperplane: the remaining
/// hyperplanes restricted to the affine chart where the chosen linear form
/// equals one.
pub fn decone(arr: &Arrangement, chosen: usize) -> Result<Arrangement> {
    if arr.kind == ArrangementKind::Affine {
        return Err(usage("decone takes a central or projective arrangement"));
    }
    if chosen >= arr.len() {
        return Err(usage("chosen hyperplane index out of range"));
    }
    let field = arr.field.clone();
    let ell = arr.ambient;
    if ell < 2 {
        return Err(usage("deconing needs ambient dimension at least 2"));
    }
    // Invertible T with last row the chosen normal, completed greedily by
    // standard basis vectors.
    let alpha = arr.hyperplanes[chosen].normal.clone();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..ell {
        if rows.len() == ell - 1 {
            break;
        }
        let mut e = vec![field.zero(); ell];
        e[i] = field.one();
        let mut probe = rows.clone();
        probe.push(e.clone());
        probe.push(alpha.clone());
        let mut m = Matrix::from_rows(probe);
        if rref_scalar(&mut m).len() == rows.len() + 2 {
            rows.push(e);
        }
    }
    rows.push(alpha);
    let t_transpose = Matrix::from_rows(rows).transpose();
    let mut hps = Vec::new();
    for (j, h) in arr.hyperplanes.iter().enumerate() {
        if j == chosen {
            continue;
        }
        let b = solve_scalar(&t_transpose, &h.normal).expect("T is invertible");
        let normal: Vec<Scalar> = b[..ell - 1].to_vec();
        let offset = b[ell - 1].neg();
        hps.push(Hyperplane { normal, offset });
    }
    Arrangement::new(field, ell - 1, ArrangementKind::Affine, hps)
}

/// Restriction of the arrangement to one of its hyperplanes: the traces of
/// the other hyperplanes in intrinsic coordinates, coincident traces merged.
pub fn restriction(arr: &Arrangement, chosen: usize) -> Result<Arrangement> {
    if chosen >= arr.len() {
        return Err(usage("chosen hyperplane index out of range"));
    }
    let field = arr.field.clone();
    let mut members = BTreeSet::new();
    members.insert(chosen);
    let (point, dirs) = solve_flat(arr, &members).expect("a hyperplane is nonempty");
    let mut traces: Vec<Hyperplane> = Vec::new();
    for (j, h) in arr.hyperplanes.iter().enumerate() {
        if j == chosen {
            continue;
        }
        let normal: Vec<Scalar> = dirs.iter().map(|d| dot(&h.normal, d)).collect();
        if normal.iter().all(Scalar::is_zero) {
            continue;
        }
        let offset = h.offset.sub(&dot(&h.normal, &point));
        if traces
            .iter()
            .any(|t| proportional(&t.normal, &t.offset, &normal, &offset))
        {
            continue;
        }
        traces.push(Hyperplane { normal, offset });
    }
    let kind = match arr.kind {
        ArrangementKind::Affine => ArrangementKind::Affine,
        _ => ArrangementKind::Central,
    };
    Arrangement::new(field, dirs.len(), kind, traces)
}

pub fn deletion(arr: &Arrangement, chosen: usize) -> Result<Arrangement> {
    if chosen >= arr.len() {
        return Err(usage("chosen hyperplane index out of range"));
    }
    let hps = arr
        .hyperplanes
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != chosen)
        .map(|(_, h)| h.clone())
        .collect();
    Arrangement::new(arr.field.clone(), arr.ambient, arr.kind, hps)
}

/// Split a set of vectors (normals of a central arrangement) into two
/// rank-additive parts, or `None` when no such split exists.
///
/// The matroid components are read off the fundamental circuits of a fixed
/// greedy basis: two elements belong to one component exactly when they are
/// linked through shared circuits.
pub fn decomposition(normals: &[Vec<Scalar>]) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = normals.len();
    if n < 2 {
        return None;
    }
    let mut basis: Vec<usize> = Vec::new();
    for (i, v) in normals.iter().enumerate() {
        let mut probe: Vec<Vec<Scalar>> = basis.iter().map(|&b| normals[b].clone()).collect();
        probe.push(v.clone());
        let mut m = Matrix::from_rows(probe);
        if rref_scalar(&mut m).len() == basis.len() + 1 {
            basis.push(i);
        }
    }
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut parent: Vec<usize> = (0..n).collect();
    let basis_matrix = Matrix::from_rows(
        (0..normals[0].len())
            .map(|r| basis.iter().map(|&b| normals[b][r].clone()).collect())
            .collect(),
    );
    for e in 0..n {
        if basis.contains(&e) {
            continue;
        }
        let coeffs = solve_scalar(&basis_matrix, &normals[e])
            .expect("non-basis vectors lie in the basis span");
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let (ra, rb) = (find(&mut parent, e), find(&mut parent, basis[k]));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
    }
    let root0 = find(&mut parent, 0);
    let mut part_a = Vec::new();
    let mut part_b = Vec::new();
    for i in 0..n {
        if find(&mut parent, i) == root0 {
            part_a.push(i);
        } else {
            part_b.push(i);
        }
    }
    if part_b.is_empty() {
        return None;
    }
    debug_assert!({
        let rank_of = |idx: &[usize]| {
            let mut m =
                Matrix::from_rows(idx.iter().map(|&i| normals[i].clone()).collect::<Vec<_>>());
            rref_scalar(&mut m).len()
        };
        rank_of(&part_a) + rank_of(&part_b) == rank_of(&(0..n).collect::<Vec<_>>())
    });
    Some((part_a, part_b))
}

/// Decomposability of a central arrangement, with a witnessing partition.
pub fn is_decomposable(arr: &Arrangement) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    if arr.kind == ArrangementKind::Affine {
        return Err(usage("decomposability is defined for central arrangements"));
    }
    let normals: Vec<Vec<Scalar>> = arr.hyperplanes.iter().map(|h| h.normal.clone()).collect();
    Ok(decomposition(&normals))
}

#[derive(Clone)]
pub struct WeightedArrangement {
    pub arrangement: Arrangement,
    pub weights: Vec<Scalar>,
}

impl WeightedArrangement {
    pub fn new(arrangement: Arrangement, weights: Vec<Scalar>) -> Result<WeightedArrangement> {
        if weights.len() != arrangement.len() {
            return Err(usage("one weight per hyperplane required"));
        }
        Ok(WeightedArrangement {
            arrangement,
            weights,
        })
    }

    /// Sum of the member weights of a flat.
    pub fn lambda_x(&self, flat: &Flat) -> Scalar {
        let mut acc = self.arrangement.field().zero();
        for &h in &flat.members {
            acc = acc.add(&self.weights[h]);
        }
        acc
    }
}

#[derive(Debug, Clone)]
pub struct DenseEdge {
    pub flat_index: usize,
    pub members: BTreeSet<usize>,
    pub lambda_x: Scalar,
    pub lambda_nonneg_integer: bool,
}

#[derive(Debug, Clone)]
pub struct DenseEdgeReport {
    pub edges: Vec<DenseEdge>,
    /// No dense-edge weight sum is a non-negative integer, the center flat
    /// included.
    pub ok_including_center: bool,
    /// The same check with the dimension-zero flat dropped (the projective
    /// reading, where that flat is empty).
    pub ok_excluding_center: bool,
    /// Flats whose weight sum has an irrational part; such sums are never
    /// non-negative integers.
    pub irrational_lambda_flats: Vec<usize>,
}

/// Enumerate dense edges (flats with indecomposable localization) and test
/// their weight sums against the non-negative integers.
pub fn dense_edges(wa: &WeightedArrangement, lat: &IntersectionLattice) -> DenseEdgeReport {
    let arr = &wa.arrangement;
    let mut edges = Vec::new();
    let mut ok_all = true;
    let mut ok_proj = true;
    let mut irrational = Vec::new();
    for (idx, flat) in lat.flats.iter().enumerate() {
        if flat.members.is_empty() {
            continue;
        }
        let normals: Vec<Vec<Scalar>> = flat
            .members
            .iter()
            .map(|&h| arr.hyperplanes[h].normal.clone())
            .collect();
        let dense = normals.len() == 1 || decomposition(&normals).is_none();
        if !dense {
            continue;
        }
        let lambda = wa.lambda_x(flat);
        if lambda.as_rational().is_none() {
            irrational.push(idx);
        }
        let bad = lambda.is_nonnegative_integer();
        if bad {
            ok_all = false;
            if flat.dim > 0 {
                ok_proj = false;
            }
        }
        edges.push(DenseEdge {
            flat_index: idx,
            members: flat.members.clone(),
            lambda_x: lambda,
            lambda_nonneg_integer: bad,
        });
    }
    DenseEdgeReport {
        edges,
        ok_including_center: ok_all,
        ok_excluding_center: ok_proj,
        irrational_lambda_flats: irrational,
    }
}

/// Euler characteristic of the projective complement, through the central
/// cone: beta = (-1)^(rank-1) (chi / (t-1)) evaluated at 1.
pub fn beta_invariant(arr: &Arrangement, lat: &IntersectionLattice) -> Result<i64> {
    if arr.kind == ArrangementKind::Affine {
        return Err(usage("beta invariant is defined through a central cone"));
    }
    let chi = characteristic_polynomial(arr, lat);
    let quotient = chi.divide_by_t_minus_1().ok_or_else(|| {
        usage("characteristic polynomial of a central arrangement must vanish at 1")
    })?;
    let rank = arr.rank(lat);
    let sign = if (rank + 1) % 2 == 0 { 1 } else { -1 };
    Ok(sign * quotient.eval(1) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn q() -> Field {
        Field::rationals()
    }

    fn hp(normal: &[i64], offset: i64) -> Hyperplane {
        Hyperplane {
            normal: normal.iter().map(|&v| q().integer(v)).collect(),
            offset: q().integer(offset),
        }
    }

    fn lines(arr: &[(&[i64], i64)]) -> Arrangement {
        Arrangement::new(
            q(),
            arr[0].0.len(),
            if arr.iter().all(|(_, c)| *c == 0) {
                ArrangementKind::Central
            } else {
                ArrangementKind::Affine
            },
            arr.iter().map(|(a, c)| hp(a, *c)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn two_generic_lines() {
        let arr = lines(&[(&[1, 0], 0), (&[0, 1], 1)]);
        let lat = lattice(&arr).unwrap();
        // Ambient, two lines, one point.
        assert_eq!(lat.flats.len(), 4);
        let point = lat.flats.iter().position(|f| f.dim == 0).unwrap();
        assert_eq!(lat.mobius[point], 1);
        let chi = characteristic_polynomial(&arr, &lat);
        assert_eq!(chi.0, vec![1, -2, 1]);
    }

    #[test]
    fn generic_affine_lines_chambers() {
        // s generic affine lines: chi = t^2 - s t + C(s,2).
        let arr = lines(&[(&[1, 0], 1), (&[0, 1], 2), (&[1, 1], 4), (&[1, -1], 7)]);
        let lat = lattice(&arr).unwrap();
        let chi = characteristic_polynomial(&arr, &lat);
        assert_eq!(chi.0, vec![6, -4, 1]);
        let cc = chamber_counts(&arr, &lat).unwrap();
        assert_eq!(cc.regions, 1 + 4 + 6);
        assert_eq!(cc.bounded, 3); // C(3,2)
    }

    #[test]
    fn single_hyperplane_chambers() {
        let arr = lines(&[(&[1, 0], 3)]);
        let lat = lattice(&arr).unwrap();
        let cc = chamber_counts(&arr, &lat).unwrap();
        assert_eq!(cc.regions, 2);
        assert_eq!(cc.bounded, 0);
    }

    #[test]
    fn empty_arrangement_char_poly() {
        let arr = Arrangement::new(q(), 3, ArrangementKind::Affine, vec![]).unwrap();
        let lat = lattice(&arr).unwrap();
        assert_eq!(characteristic_polynomial(&arr, &lat).0, vec![0, 0, 0, 1]);
    }

    #[test]
    fn cone_of_a_point() {
        // One point in C^1 -> two lines through the origin in C^2.
        let arr = lines(&[(&[1], 1)]);
        let coned = cone(&arr).unwrap();
        assert_eq!(coned.ambient(), 2);
        assert_eq!(coned.len(), 2);
        assert_eq!(coned.kind(), ArrangementKind::Central);
        // Decone at the added hyperplane restores the input exactly.
        let back = decone(&coned, 1).unwrap();
        assert_eq!(back.len(), 1);
        assert_eq!(back.hyperplanes()[0].normal, arr.hyperplanes()[0].normal);
        assert_eq!(back.hyperplanes()[0].offset, arr.hyperplanes()[0].offset);
    }

    #[test]
    fn decone_generic_central() {
        // Generic central s lines in C^2: every deconing is s-1 points in C^1.
        let arr = lines(&[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 0), (&[1, -1], 0)]);
        for chosen in 0..4 {
            let d = decone(&arr, chosen).unwrap();
            assert_eq!(d.ambient(), 1);
            assert_eq!(d.len(), 3);
            let lat = lattice(&d).unwrap();
            // 3 distinct points on a line.
            assert_eq!(characteristic_polynomial(&d, &lat).0, vec![-3, 1]);
        }
    }

    #[test]
    fn cone_decone_lattice_isomorphism() {
        let arr = lines(&[(&[1, 0], 1), (&[0, 1], 2), (&[1, 1], 0)]);
        let coned = cone(&arr).unwrap();
        let back = decone(&coned, arr.len()).unwrap();
        let lat_a = lattice(&arr).unwrap();
        let lat_b = lattice(&back).unwrap();
        assert_eq!(lat_a.flats.len(), lat_b.flats.len());
        let members_a: Vec<_> = lat_a.flats.iter().map(|f| f.members.clone()).collect();
        let members_b: Vec<_> = lat_b.flats.iter().map(|f| f.members.clone()).collect();
        assert_eq!(members_a, members_b);
        assert_eq!(lat_a.mobius, lat_b.mobius);
    }

    #[test]
    fn boolean_arrangement_decomposes() {
        let arr = lines(&[(&[1, 0], 0), (&[0, 1], 0)]);
        let split = is_decomposable(&arr).unwrap().unwrap();
        assert_eq!(split, (vec![0], vec![1]));
    }

    #[test]
    fn three_concurrent_lines_do_not_decompose() {
        let arr = lines(&[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 0)]);
        assert!(is_decomposable(&arr).unwrap().is_none());
    }

    #[test]
    fn decomposition_matches_bipartition_bruteforce() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_000b);
        for _ in 0..40 {
            let n = rng.gen_range(2..=6usize);
            let ell = rng.gen_range(2..=3usize);
            let mut normals = Vec::new();
            for _ in 0..n {
                loop {
                    let v: Vec<Scalar> = (0..ell)
                        .map(|_| q().integer(rng.gen_range(-2..=2)))
                        .collect();
                    if v.iter().any(|x| !x.is_zero()) {
                        normals.push(v);
                        break;
                    }
                }
            }
            let rank_of = |idx: &[usize]| {
                let mut m = Matrix::from_rows(
                    idx.iter().map(|&i| normals[i].clone()).collect::<Vec<_>>(),
                );
                rref_scalar(&mut m).len()
            };
            let total = rank_of(&(0..n).collect::<Vec<_>>());
            let mut brute = false;
            for mask in 1..(1u32 << (n - 1)) {
                let a: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
                let b: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) == 0).collect();
                if !a.is_empty() && !b.is_empty() && rank_of(&a) + rank_of(&b) == total {
                    brute = true;
                    break;
                }
            }
            let fast = decomposition(&normals).is_some();
            assert_eq!(fast, brute, "normals {normals:?}");
        }
    }

    #[test]
    fn generic_dense_edges_are_hyperplanes_and_center() {
        let arr = lines(&[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 0), (&[1, -1], 0)]);
        let lat = lattice(&arr).unwrap();
        let weights = vec![
            q().rational(1, 2),
            q().rational(1, 3),
            q().rational(-1, 3),
            q().rational(-1, 2),
        ];
        let wa = WeightedArrangement::new(arr, weights).unwrap();
        let report = dense_edges(&wa, &lat);
        // 4 hyperplanes plus the center.
        assert_eq!(report.edges.len(), 5);
        // The center carries weight zero, a non-negative integer.
        assert!(!report.ok_including_center);
        assert!(report.ok_excluding_center);
    }

    #[test]
    fn deletion_restriction_identity() {
        let arr = lines(&[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 0), (&[1, -1], 0)]);
        let lat = lattice(&arr).unwrap();
        let chi = characteristic_polynomial(&arr, &lat);
        for h in 0..arr.len() {
            let del = deletion(&arr, h).unwrap();
            let res = restriction(&arr, h).unwrap();
            let chi_del = characteristic_polynomial(&del, &lattice(&del).unwrap());
            let chi_res = characteristic_polynomial(&res, &lattice(&res).unwrap());
            for k in 0..chi.0.len() {
                let d = chi_del.0.get(k).copied().unwrap_or(0);
                let r = chi_res.0.get(k).copied().unwrap_or(0);
                assert_eq!(chi.0[k], d - r);
            }
        }
    }

    #[test]
    fn beta_of_generic_central() {
        // s central generic lines in C^2: beta = s - 2.
        for s in 3..=5i64 {
            let hps: Vec<Hyperplane> = (0..s).map(|k| hp(&[1, k], 0)).collect();
            let arr = Arrangement::new(q(), 2, ArrangementKind::Projective, hps).unwrap();
            let lat = lattice(&arr).unwrap();
            assert_eq!(beta_invariant(&arr, &lat).unwrap(), s - 2);
        }
    }

    #[test]
    fn duplicate_hyperplanes_rejected() {
        let r = Arrangement::new(
            q(),
            2,
            ArrangementKind::Central,
            vec![hp(&[1, 1], 0), hp(&[2, 2], 0)],
        );
        assert!(r.is_err());
    }
}
