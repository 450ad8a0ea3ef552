use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::FgAbelianGroup;
use super::matrix::IntegerMatrix;
use super::snf::smith_with;
use super::AbelianError;

/// Basis (as columns) of the integer kernel of `m`.
pub fn kernel_basis(m: &IntegerMatrix) -> IntegerMatrix {
    if m.cols() == 0 {
        return IntegerMatrix::zeros(0, 0);
    }
    if m.rows() == 0 {
        return IntegerMatrix::identity(m.cols());
    }
    let s = smith_with(m, false, true);
    let cols: Vec<usize> = (s.rank()..m.cols()).collect();
    s.v.select_cols(&cols)
}

/// Basis (as columns) of the lattice spanned by the columns of `span`.
pub fn lattice_basis(span: &IntegerMatrix) -> IntegerMatrix {
    let rows = span.rows();
    if span.cols() == 0 || rows == 0 {
        return IntegerMatrix::zeros(rows, 0);
    }
    let s = smith_with(span, true, false);
    let mut basis = IntegerMatrix::zeros(rows, s.rank());
    for (j, d) in s.diagonal.iter().enumerate() {
        for i in 0..rows {
            let x = s.u_inv.get(i, j);
            if !x.is_zero() {
                basis.set(i, j, x * d);
            }
        }
    }
    basis
}

/// Solver for `B·y = s` where `B` has linearly independent columns.
#[derive(Clone, Debug)]
pub struct LatticeSolver {
    u: IntegerMatrix,
    v: IntegerMatrix,
    diagonal: Vec<BigInt>,
    ambient: usize,
}

impl LatticeSolver {
    pub fn new(basis: &IntegerMatrix) -> Self {
        let s = smith_with(basis, true, true);
        assert_eq!(s.rank(), basis.cols(), "lattice basis must have independent columns");
        LatticeSolver { u: s.u, v: s.v, diagonal: s.diagonal, ambient: basis.rows() }
    }

    /// Coordinates of `target` in the basis, or `None` when it is not in the lattice.
    pub fn solve(&self, target: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(target.len(), self.ambient);
        let r = self.diagonal.len();
        if r == 0 {
            return target.iter().all(Zero::is_zero).then(Vec::new);
        }
        let ut = self.u.mul_vec(target);
        if ut[r..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut z = Vec::with_capacity(r);
        for (x, d) in ut.iter().take(r).zip(&self.diagonal) {
            let (q, rem) = x.div_rem(d);
            if !rem.is_zero() {
                return None;
            }
            z.push(q);
        }
        Some(self.v.mul_vec(&z))
    }

    pub fn contains(&self, target: &[BigInt]) -> bool {
        self.solve(target).is_some()
    }
}

/// True when every column of `m` lies in the column span of `relations`.
pub fn columns_in_span(m: &IntegerMatrix, relations: &IntegerMatrix) -> bool {
    if m.is_zero() {
        return true;
    }
    let basis = lattice_basis(relations);
    if basis.cols() == 0 {
        return false;
    }
    let solver = LatticeSolver::new(&basis);
    (0..m.cols()).all(|c| solver.contains(&m.col_vec(c)))
}

/// A subquotient `Z / B` of `Z^g`, where `Z` is the lattice of vectors whose
/// image under a map lands in a relation lattice, and `B ⊆ Z` is spanned by
/// given columns. Keeps explicit generators so that induced maps can be
/// expressed in invariant-factor coordinates.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: usize,
    cycles: IntegerMatrix,
    cycle_solver: Option<LatticeSolver>,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    /// For every kept generator: index into the SNF diagonal and its order (0 = infinite).
    kept: Vec<(usize, BigInt)>,
    group: FgAbelianGroup,
}

impl Subquotient {
    /// `ker(out mod out_relations) / (span(boundaries) + span(relations))`
    /// inside `Z^ambient`. `out` may be `None` for "everything is a cycle".
    pub fn new(
        ambient: usize,
        out: Option<(&IntegerMatrix, &IntegerMatrix)>,
        boundaries: &IntegerMatrix,
    ) -> Result<Self, AbelianError> {
        assert_eq!(boundaries.rows(), ambient);
        let cycles = match out {
            None => IntegerMatrix::identity(ambient),
            Some((map, rel)) => {
                assert_eq!(map.cols(), ambient);
                let stacked = if rel.cols() == 0 { map.clone() } else { map.hstack(rel) };
                let k = kernel_basis(&stacked);
                let rows: Vec<usize> = (0..ambient).collect();
                let proj = if k.cols() == 0 { IntegerMatrix::zeros(ambient, 0) } else { k.select_rows(&rows) };
                lattice_basis(&proj)
            }
        };
        let z = cycles.cols();
        let (cycle_solver, coords) = if z == 0 {
            if !boundaries.is_zero() {
                return Err(AbelianError::CompositionNonzero);
            }
            (None, IntegerMatrix::zeros(0, boundaries.cols()))
        } else {
            let solver = LatticeSolver::new(&cycles);
            let mut coords = IntegerMatrix::zeros(z, boundaries.cols());
            for c in 0..boundaries.cols() {
                let y = solver.solve(&boundaries.col_vec(c)).ok_or(AbelianError::CompositionNonzero)?;
                for (i, v) in y.into_iter().enumerate() {
                    coords.set(i, c, v);
                }
            }
            (Some(solver), coords)
        };
        let (u, u_inv, diagonal) = if z == 0 {
            (IntegerMatrix::zeros(0, 0), IntegerMatrix::zeros(0, 0), Vec::new())
        } else if coords.cols() == 0 {
            (IntegerMatrix::identity(z), IntegerMatrix::identity(z), Vec::new())
        } else {
            let s = smith_with(&coords, true, false);
            (s.u, s.u_inv, s.diagonal)
        };
        let mut kept = Vec::new();
        for i in 0..z {
            match diagonal.get(i) {
                Some(d) if d.is_one() => {}
                Some(d) => kept.push((i, d.clone())),
                None => kept.push((i, BigInt::zero())),
            }
        }
        let free = kept.iter().filter(|(_, d)| d.is_zero()).count();
        let torsion: Vec<BigInt> = kept.iter().filter(|(_, d)| !d.is_zero()).map(|(_, d)| d.clone()).collect();
        let group = FgAbelianGroup::from_invariants(free, &torsion)?;
        // Free generators come after torsion ones in SNF order; reorder so the
        // coordinate order matches the group's normal form (free first).
        let mut ordered: Vec<(usize, BigInt)> = kept.iter().filter(|(_, d)| d.is_zero()).cloned().collect();
        ordered.extend(kept.iter().filter(|(_, d)| !d.is_zero()).cloned());
        Ok(Subquotient { ambient, cycles, cycle_solver, u, u_inv, kept: ordered, group })
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    /// Orders of the generators in coordinate order (0 = infinite).
    pub fn orders(&self) -> Vec<BigInt> {
        self.kept.iter().map(|(_, d)| d.clone()).collect()
    }

    pub fn num_generators(&self) -> usize {
        self.kept.len()
    }

    /// Representative cycle (vector in `Z^ambient`) of generator `i`.
    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        let (idx, _) = &self.kept[i];
        let col = self.u_inv.col_vec(*idx);
        self.cycles.mul_vec(&col)
    }

    /// Coordinates of a cycle in the generator basis, reduced modulo orders.
    pub fn coords(&self, cycle: &[BigInt]) -> Result<Vec<BigInt>, AbelianError> {
        assert_eq!(cycle.len(), self.ambient);
        let Some(solver) = &self.cycle_solver else {
            return if cycle.iter().all(Zero::is_zero) { Ok(Vec::new()) } else { Err(AbelianError::NotACycle) };
        };
        let y = solver.solve(cycle).ok_or(AbelianError::NotACycle)?;
        let w = self.u.mul_vec(&y);
        Ok(self
            .kept
            .iter()
            .map(|(idx, d)| if d.is_zero() { w[*idx].clone() } else { w[*idx].mod_floor(d) })
            .collect())
    }
}

/// `ker(d_out) / im(d_in)` for a complex of free abelian groups.
pub fn homology_at(d_in: &IntegerMatrix, d_out: &IntegerMatrix) -> Result<FgAbelianGroup, AbelianError> {
    let ambient = if d_in.rows() > 0 || d_in.cols() > 0 { d_in.rows() } else { d_out.cols() };
    if d_out.cols() != ambient && !(d_out.rows() == 0 && d_out.cols() == 0) {
        return Err(AbelianError::DimensionMismatch);
    }
    let empty_rel = IntegerMatrix::zeros(d_out.rows(), 0);
    homology_with_relations(d_in, d_out, &IntegerMatrix::zeros(ambient, 0), &empty_rel)
}

/// Homology where the middle group is `Z^g / rel_here` and the target of
/// `d_out` is `Z^h / rel_out` (stacked presentation).
pub fn homology_with_relations(
    d_in: &IntegerMatrix,
    d_out: &IntegerMatrix,
    rel_here: &IntegerMatrix,
    rel_out: &IntegerMatrix,
) -> Result<FgAbelianGroup, AbelianError> {
    let ambient = rel_here.rows();
    let d_out = if d_out.cols() == ambient { d_out.clone() } else { IntegerMatrix::zeros(0, ambient) };
    let rel_out = if rel_out.rows() == d_out.rows() { rel_out.clone() } else { IntegerMatrix::zeros(d_out.rows(), 0) };
    let d_in = if d_in.rows() == ambient { d_in.clone() } else { IntegerMatrix::zeros(ambient, 0) };
    let composite = &d_out * &d_in;
    if !columns_in_span(&composite, &rel_out) {
        return Err(AbelianError::CompositionNonzero);
    }
    let boundaries = if rel_here.cols() == 0 { d_in } else { d_in.hstack(rel_here) };
    let sq = Subquotient::new(ambient, Some((&d_out, &rel_out)), &boundaries)?;
    Ok(sq.group().clone())
}
