//! Finitely generated abelian groups in invariant-factor normal form, and
//! exact computations with their homomorphisms.
//!
//! A group is stored as `Z^free_rank (+) Z/d_1 (+) ... (+) Z/d_k` with
//! `d_1 | d_2 | ... | d_k` and every `d_i >= 2`; two groups are isomorphic
//! exactly when these data agree, so equality is structural.  Elements carry
//! coordinates in the normal-form basis: free coordinates first, then one
//! coordinate per invariant factor, reduced into `[0, d_i)`.

use crate::error::{Error, Result};
use crate::matrix::{self, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl FgGroup {
    pub fn new(free_rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self> {
        for w in invariant_factors.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(Error::Input(format!(
                    "invariant factors must form a divisibility chain, got {} before {}",
                    w[0], w[1]
                )));
            }
        }
        if let Some(bad) = invariant_factors.iter().find(|d| **d < BigInt::from(2)) {
            return Err(Error::Input(format!(
                "invariant factors must be >= 2, got {bad}"
            )));
        }
        Ok(Self {
            free_rank,
            invariant_factors,
        })
    }

    pub fn trivial() -> Self {
        Self {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// `Z/d` for `d >= 2`, the trivial group for `d = 1`.
    pub fn cyclic(d: u64) -> Self {
        assert!(d >= 1, "cyclic group modulus must be positive");
        if d == 1 {
            Self::trivial()
        } else {
            Self {
                free_rank: 0,
                invariant_factors: vec![BigInt::from(d)],
            }
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn torsion_count(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Number of normal-form generators.
    pub fn len(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().product())
    }

    /// Exponent of the torsion part (1 when there is none).
    pub fn exponent(&self) -> BigInt {
        self.invariant_factors
            .last()
            .cloned()
            .unwrap_or_else(BigInt::one)
    }

    /// Order of the `i`-th generator; `None` for free generators.
    pub fn generator_order(&self, i: usize) -> Option<&BigInt> {
        if i < self.free_rank {
            None
        } else {
            Some(&self.invariant_factors[i - self.free_rank])
        }
    }

    /// Columns span the relation lattice of the normal form inside
    /// `Z^len`: one column `d_i * e_i` per torsion generator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.len(), self.invariant_factors.len());
        for (t, d) in self.invariant_factors.iter().enumerate() {
            m[(self.free_rank + t, t)] = d.clone();
        }
        m
    }

    fn reduce_coord(&self, i: usize, value: BigInt) -> BigInt {
        match self.generator_order(i) {
            None => value,
            Some(d) => value.mod_floor(d),
        }
    }

    pub fn reduce(&self, coords: Vec<BigInt>) -> Result<GroupElement> {
        if coords.len() != self.len() {
            return Err(Error::Shape(format!(
                "expected {} coordinates for {}, got {}",
                self.len(),
                self,
                coords.len()
            )));
        }
        let coords = coords
            .into_iter()
            .enumerate()
            .map(|(i, v)| self.reduce_coord(i, v))
            .collect();
        Ok(GroupElement {
            group: self.clone(),
            coords,
        })
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<GroupElement> {
        self.reduce(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            coords: vec![BigInt::zero(); self.len()],
        }
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        assert!(i < self.len(), "generator index out of range");
        let mut z = self.zero();
        z.coords[i] = self.reduce_coord(i, BigInt::one());
        z
    }

    /// All elements of a finite group.  Panics on infinite groups; callers
    /// guard with `order()` first.
    pub fn elements(&self) -> Vec<GroupElement> {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let mut out = vec![self.zero()];
        for (t, d) in self.invariant_factors.iter().enumerate() {
            let d = d
                .to_string()
                .parse::<u64>()
                .expect("enumeration factor exceeds u64");
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for e in &out {
                for v in 0..d {
                    let mut e2 = e.clone();
                    e2.coords[self.free_rank + t] = BigInt::from(v);
                    next.push(e2);
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for FgGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" (+) "))
    }
}

impl fmt::Debug for FgGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgGroup({self})")
    }
}

/// An element in the normal-form basis of its parent group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: FgGroup,
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn group(&self) -> &FgGroup {
        &self.group
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.group, other.group, "element addition across groups");
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .enumerate()
            .map(|(i, (a, b))| self.group.reduce_coord(i, a + b))
            .collect();
        Self {
            group: self.group.clone(),
            coords,
        }
    }

    pub fn neg(&self) -> Self {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, a)| self.group.reduce_coord(i, -a))
            .collect();
        Self {
            group: self.group.clone(),
            coords,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, a)| self.group.reduce_coord(i, a * k))
            .collect();
        Self {
            group: self.group.clone(),
            coords,
        }
    }

    /// Additive order; `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        for i in 0..self.group.free_rank {
            if !self.coords[i].is_zero() {
                return None;
            }
        }
        let mut ord = BigInt::one();
        for (t, d) in self.group.invariant_factors.iter().enumerate() {
            let c = &self.coords[self.group.free_rank + t];
            let o = d / d.gcd(c);
            ord = ord.lcm(&o);
        }
        Some(ord)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) in {}",
            self.coords
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(", "),
            self.group
        )
    }
}

/// Homomorphism between groups in normal form.  Column `i` of `matrix` is
/// the image of the `i`-th source generator; entries in torsion target rows
/// are kept reduced, so comparing matrices compares the homs generator-wise.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: FgGroup,
    target: FgGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(source: FgGroup, target: FgGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.len() || matrix.cols() != source.len() {
            return Err(Error::Shape(format!(
                "hom matrix must be {}x{} for {} -> {}, got {}x{}",
                target.len(),
                source.len(),
                source,
                target,
                matrix.rows(),
                matrix.cols()
            )));
        }
        let hom = Self {
            source,
            target,
            matrix,
        }
        .reduced();
        hom.check_well_defined()?;
        Ok(hom)
    }

    fn reduced(mut self) -> Self {
        for i in 0..self.target.len() {
            if let Some(d) = self.target.generator_order(i).cloned() {
                for j in 0..self.source.len() {
                    let v = std::mem::take(&mut self.matrix[(i, j)]);
                    self.matrix[(i, j)] = v.mod_floor(&d);
                }
            }
        }
        self
    }

    /// Composition of well-defined homs is well-defined; used internally to
    /// skip re-validation.
    fn new_unchecked(source: FgGroup, target: FgGroup, matrix: IntMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), target.len());
        debug_assert_eq!(matrix.cols(), source.len());
        Self {
            source,
            target,
            matrix,
        }
        .reduced()
    }

    /// A map of normal forms is well-defined exactly when each source
    /// relation `d_i * g_i = 0` is respected by the images.
    fn check_well_defined(&self) -> Result<()> {
        for j in 0..self.source.len() {
            let Some(d) = self.source.generator_order(j) else {
                continue;
            };
            for i in 0..self.target.len() {
                let v = d * &self.matrix[(i, j)];
                let ok = match self.target.generator_order(i) {
                    None => v.is_zero(),
                    Some(e) => (&v % e).is_zero(),
                };
                if !ok {
                    return Err(Error::IllDefinedHom(format!(
                        "source generator {j} has order {d}, but {d} times its image \
                         is nonzero in target coordinate {i} (image entry {})",
                        self.matrix[(i, j)]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &FgGroup {
        &self.source
    }

    pub fn target(&self) -> &FgGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn identity(g: &FgGroup) -> Self {
        Self::new_unchecked(g.clone(), g.clone(), IntMatrix::identity(g.len()))
    }

    pub fn zero(source: &FgGroup, target: &FgGroup) -> Self {
        Self::new_unchecked(
            source.clone(),
            target.clone(),
            IntMatrix::zeros(target.len(), source.len()),
        )
    }

    /// Multiplication by `k` as an endomorphism.
    pub fn scalar(g: &FgGroup, k: &BigInt) -> Self {
        let mut m = IntMatrix::zeros(g.len(), g.len());
        for i in 0..g.len() {
            m[(i, i)] = k.clone();
        }
        Self::new_unchecked(g.clone(), g.clone(), m)
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        if x.group != self.source {
            return Err(Error::NotInGroup(format!(
                "element of {} fed to hom with source {}",
                x.group, self.source
            )));
        }
        self.target.reduce(self.matrix.mul_vec(&x.coords))
    }

    /// `self.then(g) = g o self` (apply `self` first).
    pub fn then(&self, g: &Self) -> Result<Self> {
        if self.target != g.source {
            return Err(Error::NotComposable(format!(
                "cannot follow a map into {} with a map out of {}",
                self.target, g.source
            )));
        }
        Ok(Self::new_unchecked(
            self.source.clone(),
            g.target.clone(),
            g.matrix() * self.matrix(),
        ))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::NotComposable(
                "hom addition needs equal source and target".into(),
            ));
        }
        Ok(Self::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            self.matrix() + other.matrix(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::NotComposable(
                "hom subtraction needs equal source and target".into(),
            ));
        }
        Ok(Self::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            self.matrix() - other.matrix(),
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Does `y` lie in the image?  Solves `M x = y (mod target relations)`.
    pub fn contains_in_image(&self, y: &GroupElement) -> Result<bool> {
        Ok(self.preimage(y)?.is_some())
    }

    /// One preimage of `y` under the hom, if any.
    pub fn preimage(&self, y: &GroupElement) -> Result<Option<GroupElement>> {
        if y.group != self.target {
            return Err(Error::NotInGroup(format!(
                "element of {} is not in the target {}",
                y.group, self.target
            )));
        }
        let a = self.matrix.hstack(&self.target.relation_matrix());
        match matrix::solve(&a, &y.coords) {
            None => Ok(None),
            Some(sol) => {
                let x = sol[..self.source.len()].to_vec();
                Ok(Some(self.source.reduce(x)?))
            }
        }
    }

    /// Kernel subgroup in normal form with its inclusion.
    pub fn kernel(&self) -> (FgGroup, GroupHom) {
        let p = self.source.len();
        // pullback of the target relation lattice
        let a = self.matrix.hstack(&self.target.relation_matrix());
        let n = matrix::kernel_basis(&a);
        let b = n.select_rows(&(0..p).collect::<Vec<_>>());
        subgroup_from_generators(&self.source, &b)
    }

    /// Image subgroup in normal form with its inclusion into the target.
    pub fn image(&self) -> (FgGroup, GroupHom) {
        subgroup_from_generators(&self.target, &self.matrix)
    }

    /// Cokernel with the quotient map.
    pub fn cokernel(&self) -> (FgGroup, GroupHom) {
        let c = self.cokernel_full();
        (c.group, c.quotient)
    }

    pub fn cokernel_full(&self) -> Cokernel {
        let lattice = self.matrix.hstack(&self.target.relation_matrix());
        let pres = present_cols(self.target.len(), &lattice);
        let quotient = GroupHom::new(self.target.clone(), pres.group.clone(), pres.proj_matrix)
            .expect("quotient of a well-defined hom is well-defined");
        Cokernel {
            group: pres.group,
            quotient,
            section: pres.section,
            source: self.clone(),
        }
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}: {:?}", self.source, self.target, self.matrix)
    }
}

/// Cokernel together with enough data to factor maps through the quotient.
pub struct Cokernel {
    pub group: FgGroup,
    pub quotient: GroupHom,
    section: IntMatrix,
    source: GroupHom,
}

impl Cokernel {
    /// A representative in the target for each cokernel generator.
    pub fn section_of(&self, i: usize) -> Result<GroupElement> {
        self.quotient.source().reduce(self.section.col_vec(i))
    }

    /// Factor `h` (with `h o f = 0`) through the quotient map.
    pub fn descend(&self, h: &GroupHom) -> Result<GroupHom> {
        if h.source() != self.quotient.source() {
            return Err(Error::NotComposable(
                "map must start at the quotient's source".into(),
            ));
        }
        if !self.source.then(h)?.is_zero() {
            return Err(Error::NotComposable(
                "map does not kill the image, cannot descend to the cokernel".into(),
            ));
        }
        GroupHom::new(
            self.group.clone(),
            h.target().clone(),
            h.matrix() * &self.section,
        )
    }
}

struct Presentation {
    group: FgGroup,
    /// `group.len() x generators` matrix of the projection `Z^g -> group`.
    proj_matrix: IntMatrix,
    /// `generators x group.len()` matrix of a set-theoretic section.
    section: IntMatrix,
}

/// Normal form of `Z^generators / (column lattice)`.
fn present_cols(generators: usize, lattice: &IntMatrix) -> Presentation {
    assert_eq!(lattice.rows(), generators, "lattice lives in Z^generators");
    let s = matrix::smith_normal_form_full(lattice);
    let diag = s.diagonal();
    let d_of = |i: usize| diag.get(i).cloned().unwrap_or_else(BigInt::zero);
    let free_idx: Vec<usize> = (0..generators).filter(|&i| d_of(i).is_zero()).collect();
    let torsion_idx: Vec<usize> = (0..generators)
        .filter(|&i| d_of(i) > BigInt::one())
        .collect();
    let factors: Vec<BigInt> = torsion_idx.iter().map(|&i| d_of(i)).collect();
    let group = FgGroup {
        free_rank: free_idx.len(),
        invariant_factors: factors,
    };
    let perm: Vec<usize> = free_idx.into_iter().chain(torsion_idx).collect();
    Presentation {
        group,
        proj_matrix: s.u.select_rows(&perm),
        section: s.u_inv.select_cols(&perm),
    }
}

/// Normal form of the subgroup of `ambient` generated by the columns of
/// `gens`, with its inclusion map.
fn subgroup_from_generators(ambient: &FgGroup, gens: &IntMatrix) -> (FgGroup, GroupHom) {
    assert_eq!(gens.rows(), ambient.len());
    let s = gens.cols();
    // relations among the chosen generators, as elements of the ambient group
    let a = gens.hstack(&ambient.relation_matrix());
    let n = matrix::kernel_basis(&a);
    let rels = n.select_rows(&(0..s).collect::<Vec<_>>());
    let pres = present_cols(s, &rels);
    let inclusion = GroupHom::new(pres.group.clone(), ambient.clone(), gens * &pres.section)
        .expect("subgroup inclusion is well-defined by construction");
    (pres.group, inclusion)
}

/// Cokernel of a relation matrix whose *rows* are relations among
/// `generators` formal generators; returns the normal form and the
/// projection from `Z^generators`.
pub fn group_from_presentation(
    generators: usize,
    relations: &IntMatrix,
) -> Result<(FgGroup, GroupHom)> {
    if relations.cols() != generators && !(relations.rows() == 0 && relations.cols() == 0) {
        return Err(Error::Shape(format!(
            "relation matrix must have {generators} columns, got {}",
            relations.cols()
        )));
    }
    let lattice = if relations.rows() == 0 {
        IntMatrix::zeros(generators, 0)
    } else {
        relations.transpose()
    };
    let pres = present_cols(generators, &lattice);
    let proj = GroupHom::new(
        FgGroup::free(generators),
        pres.group.clone(),
        pres.proj_matrix,
    )?;
    Ok((pres.group, proj))
}

/// Presentation that also exposes the section; internal consumers (direct
/// sums, coefficient groups) need representatives of normal-form generators.
pub(crate) fn present_with_section(
    generators: usize,
    relation_cols: &IntMatrix,
) -> (FgGroup, GroupHom, IntMatrix) {
    let pres = present_cols(generators, relation_cols);
    let proj = GroupHom::new(
        FgGroup::free(generators),
        pres.group.clone(),
        pres.proj_matrix,
    )
    .expect("projection from a free group is always well-defined");
    (pres.group, proj, pres.section)
}

/// Torsion subgroup with its inclusion.
pub fn torsion_subgroup(g: &FgGroup) -> (FgGroup, GroupHom) {
    let t = FgGroup {
        free_rank: 0,
        invariant_factors: g.invariant_factors.clone(),
    };
    let mut m = IntMatrix::zeros(g.len(), t.len());
    for i in 0..t.len() {
        m[(g.free_rank + i, i)] = BigInt::one();
    }
    let inclusion = GroupHom::new(t.clone(), g.clone(), m).expect("torsion inclusion");
    (t, inclusion)
}

/// Is `im(f) = ker(g)` inside the middle group?
pub fn exact_at(f: &GroupHom, g: &GroupHom) -> Result<bool> {
    if f.target != g.source {
        return Err(Error::NotComposable(format!(
            "exactness needs target of the first map ({}) to equal source of the second ({})",
            f.target, g.source
        )));
    }
    // im(f) inside ker(g) is exactly "g o f = 0"
    if !f.then(g)?.is_zero() {
        return Ok(false);
    }
    // ker(g) inside im(f): test each kernel generator for membership
    let (k, incl) = g.kernel();
    for i in 0..k.len() {
        let gen_in_middle = incl.apply(&k.generator(i))?;
        if !f.contains_in_image(&gen_in_middle)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Direct sum with the four structural maps, all in normal form.
pub struct DirectSum {
    pub group: FgGroup,
    pub left_inclusion: GroupHom,
    pub right_inclusion: GroupHom,
    pub left_projection: GroupHom,
    pub right_projection: GroupHom,
}

pub fn direct_sum(a: &FgGroup, b: &FgGroup) -> DirectSum {
    let gens = a.len() + b.len();
    let mut rel = IntMatrix::zeros(gens, a.torsion_count() + b.torsion_count());
    for (t, d) in a.invariant_factors.iter().enumerate() {
        rel[(a.free_rank + t, t)] = d.clone();
    }
    for (t, d) in b.invariant_factors.iter().enumerate() {
        rel[(a.len() + b.free_rank + t, a.torsion_count() + t)] = d.clone();
    }
    let (group, proj, section) = present_with_section(gens, &rel);
    let left_cols: Vec<usize> = (0..a.len()).collect();
    let right_cols: Vec<usize> = (a.len()..gens).collect();
    let left_inclusion = GroupHom::new(
        a.clone(),
        group.clone(),
        proj.matrix().select_cols(&left_cols),
    )
    .expect("direct-sum inclusion");
    let right_inclusion = GroupHom::new(
        b.clone(),
        group.clone(),
        proj.matrix().select_cols(&right_cols),
    )
    .expect("direct-sum inclusion");
    let left_projection = GroupHom::new(group.clone(), a.clone(), section.select_rows(&left_cols))
        .expect("direct-sum projection");
    let right_projection =
        GroupHom::new(group.clone(), b.clone(), section.select_rows(&right_cols))
            .expect("direct-sum projection");
    DirectSum {
        group,
        left_inclusion,
        right_inclusion,
        left_projection,
        right_projection,
    }
}
