//! Finitely generated abelian groups presented as cokernels `ℤⁿ / M·ℤᵐ`.
//!
//! A group keeps its ambient presentation. Homomorphisms are integer matrices
//! between ambient spaces that respect the relation lattices, and subgroups
//! are sublattices containing the relations. Canonical coordinates come from
//! the Smith form: `x ↦ U·x`, dropping unit factors, reducing torsion
//! coordinates into `[0, dᵢ)`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactint::{smith_normal_form, IntMatrix, Lattice, SnfDecomposition};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

impl Order {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Debug)]
struct Presentation {
    relations: IntMatrix,
    snf: SnfDecomposition,
    lattice: Lattice,
    /// Number of leading unit factors; canonical coordinates start here.
    units: usize,
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

/// `ℤⁿ` modulo the column lattice of an `n × m` relation matrix.
#[derive(Debug, Clone)]
pub struct AbelianGroup(Arc<Presentation>);

/// Canonical coordinates: torsion part first (each in `[0, dᵢ)`), then the
/// free part.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn cokernel(relations: IntMatrix) -> AbelianGroup {
    AbelianGroup::new(relations)
}

impl AbelianGroup {
    pub fn new(relations: IntMatrix) -> Self {
        let snf = smith_normal_form(&relations);
        let lattice = Lattice::new(&relations);
        let n = relations.rows();
        let diag = snf.diagonal();
        let units = diag.iter().take_while(|d| d.is_one()).count();
        let invariant_factors: Vec<BigInt> =
            diag.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect();
        let free_rank = n - units - invariant_factors.len();
        Self(Arc::new(Presentation {
            relations,
            snf,
            lattice,
            units,
            invariant_factors,
            free_rank,
        }))
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.0.relations
    }

    pub fn snf(&self) -> &SnfDecomposition {
        &self.0.snf
    }

    pub fn relation_lattice(&self) -> &Lattice {
        &self.0.lattice
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.0.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.0.free_rank
    }

    /// Number of ambient generators.
    pub fn ambient_rank(&self) -> usize {
        self.0.relations.rows()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.is_finite() && self.invariant_factors().is_empty()
    }

    pub fn order(&self) -> Order {
        if self.is_finite() {
            Order::Finite(self.invariant_factors().iter().product())
        } else {
            Order::Infinite
        }
    }

    /// True if both groups come from the same relation matrix.
    pub fn same_presentation(&self, other: &AbelianGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.relations == other.0.relations
    }

    /// Abstract isomorphism type: same invariant factors and free rank.
    pub fn is_isomorphic(&self, other: &AbelianGroup) -> bool {
        self.invariant_factors() == other.invariant_factors() && self.free_rank() == other.free_rank()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![BigInt::zero(); self.ambient_rank() - self.0.units],
        }
    }

    fn check_ambient(&self, len: usize) -> Result<()> {
        if len != self.ambient_rank() {
            return Err(Error::DimensionMismatch(format!(
                "ambient vector of length {len} for a group on {} generators",
                self.ambient_rank()
            )));
        }
        Ok(())
    }

    fn normalize(&self, mut coords: Vec<BigInt>) -> GroupElement {
        for (c, d) in coords.iter_mut().zip(self.invariant_factors()) {
            *c = c.mod_floor(d);
        }
        GroupElement { coords }
    }

    /// Canonical element for the class of an ambient vector.
    pub fn reduce(&self, ambient: &[BigInt]) -> Result<GroupElement> {
        self.check_ambient(ambient.len())?;
        let y = self.0.snf.u.mul_vec(ambient)?;
        Ok(self.normalize(y[self.0.units..].to_vec()))
    }

    /// An ambient representative of `el`.
    pub fn lift(&self, el: &GroupElement) -> Result<Vec<BigInt>> {
        if el.coords.len() != self.ambient_rank() - self.0.units {
            return Err(Error::DimensionMismatch(format!(
                "element with {} coordinates in a group with {}",
                el.coords.len(),
                self.ambient_rank() - self.0.units
            )));
        }
        let mut y = vec![BigInt::zero(); self.0.units];
        y.extend(el.coords.iter().cloned());
        self.0.snf.u_inv.mul_vec(&y)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        self.normalize(coords)
    }

    pub fn scale(&self, a: &GroupElement, k: &BigInt) -> GroupElement {
        self.normalize(a.coords.iter().map(|x| x * k).collect())
    }

    /// The ambient basis vector `e_i` as a group element.
    pub fn generator(&self, i: usize) -> Result<GroupElement> {
        let mut v = vec![BigInt::zero(); self.ambient_rank()];
        *v.get_mut(i).ok_or_else(|| {
            Error::InvalidArgument(format!("generator {i} of {}", self.ambient_rank()))
        })? = BigInt::one();
        self.reduce(&v)
    }

    /// Every element of a finite group of order at most `limit`, in
    /// lexicographic coordinate order.
    pub fn elements(&self, limit: usize) -> Option<Vec<GroupElement>> {
        let order = self.order();
        let n: usize = order.finite()?.try_into().ok()?;
        if n > limit {
            return None;
        }
        let factors = self.invariant_factors();
        let mut out = Vec::with_capacity(n);
        let mut cur = vec![BigInt::zero(); factors.len()];
        loop {
            out.push(GroupElement { coords: cur.clone() });
            let mut i = factors.len();
            loop {
                if i == 0 {
                    return Some(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < factors[i] {
                    break;
                }
                cur[i] = BigInt::zero();
            }
        }
    }
}

/// `Z/d1 x ... x Z/dr x Z^f`, or `0` for the trivial group.
impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.invariant_factors().iter().map(|d| format!("Z/{d}")).collect();
        if self.free_rank() > 0 {
            parts.push(format!("Z^{}", self.free_rank()));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

/// Homomorphism `src → dst` induced by an ambient matrix
/// (`dst` generators × `src` generators).
#[derive(Debug, Clone)]
pub struct GroupHom {
    src: AbelianGroup,
    dst: AbelianGroup,
    matrix: IntMatrix,
}

/// Checks that `a` carries every relation of `src` into the relation lattice
/// of `dst`, and returns the induced map.
pub fn induced_hom(src: &AbelianGroup, dst: &AbelianGroup, a: IntMatrix) -> Result<GroupHom> {
    if a.rows() != dst.ambient_rank() || a.cols() != src.ambient_rank() {
        return Err(Error::DimensionMismatch(format!(
            "map is {}x{}, groups need {}x{}",
            a.rows(),
            a.cols(),
            dst.ambient_rank(),
            src.ambient_rank()
        )));
    }
    let images = a.checked_mul(src.relations())?;
    for (column, col) in images.columns().enumerate() {
        if !dst.relation_lattice().contains(&col)? {
            return Err(Error::Induction { column });
        }
    }
    Ok(GroupHom {
        src: src.clone(),
        dst: dst.clone(),
        matrix: a,
    })
}

impl GroupHom {
    pub fn identity(g: &AbelianGroup) -> GroupHom {
        Self::multiplication(g, &BigInt::one())
    }

    /// `x ↦ k·x` on `g`.
    pub fn multiplication(g: &AbelianGroup, k: &BigInt) -> GroupHom {
        GroupHom {
            src: g.clone(),
            dst: g.clone(),
            matrix: IntMatrix::identity(g.ambient_rank()).scale(k),
        }
    }

    pub fn src(&self) -> &AbelianGroup {
        &self.src
    }

    pub fn dst(&self) -> &AbelianGroup {
        &self.dst
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, el: &GroupElement) -> Result<GroupElement> {
        let x = self.src.lift(el)?;
        self.dst.reduce(&self.matrix.mul_vec(&x)?)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GroupHom) -> Result<GroupHom> {
        if !first.dst.same_presentation(&self.src) {
            return Err(Error::DifferentParents);
        }
        Ok(GroupHom {
            src: first.src.clone(),
            dst: self.dst.clone(),
            matrix: self.matrix.checked_mul(&first.matrix)?,
        })
    }

    /// Equal as maps of groups: the matrices agree modulo the target relations
    /// on every ambient generator.
    pub fn equals(&self, other: &GroupHom) -> Result<bool> {
        if !self.src.same_presentation(&other.src) || !self.dst.same_presentation(&other.dst) {
            return Err(Error::DifferentParents);
        }
        let diff = self.matrix.sub(&other.matrix)?;
        for col in diff.columns() {
            if !self.dst.relation_lattice().contains(&col)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Image columns together with the target relations span the whole
    /// ambient lattice of the target.
    pub fn is_surjective(&self) -> bool {
        let spanning = self
            .matrix
            .hconcat(self.dst.relations())
            .expect("hom matrix rows match target generators");
        Lattice::new(&spanning).is_full()
    }

    /// `{x : A·x ∈ im(dst relations)}` modulo the source relations, from the
    /// integer kernel of `[A | -R_dst]` projected onto the source coordinates.
    pub fn kernel(&self) -> Result<Subgroup> {
        let neg_rel = self.dst.relations().scale(&BigInt::from(-1));
        let block = self.matrix.hconcat(&neg_rel)?;
        let ker = Lattice::new(&block).kernel_basis();
        let projected = ker.select_rows(0..self.src.ambient_rank());
        Subgroup::generated(&self.src, projected)
    }

    pub fn image(&self) -> Result<Subgroup> {
        Subgroup::generated(&self.dst, self.matrix.clone())
    }
}

pub fn is_surjective(h: &GroupHom) -> bool {
    h.is_surjective()
}

pub fn kernel(h: &GroupHom) -> Result<Subgroup> {
    h.kernel()
}

/// Subgroup of `parent` generated by ambient vectors, with its abstract
/// isomorphism type.
#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: AbelianGroup,
    generators: Vec<GroupElement>,
    ambient_generators: IntMatrix,
    /// Hermite basis of generators + parent relations.
    lattice: Lattice,
    structure: AbelianGroup,
}

impl Subgroup {
    /// Subgroup generated by the columns of `gens` (ambient coordinates).
    pub fn generated(parent: &AbelianGroup, gens: IntMatrix) -> Result<Subgroup> {
        let rel = parent.relations();
        let lattice = Lattice::new(&gens.hconcat(rel)?);
        // The subgroup is L / im(R) where L = span(gens, R). Writing R in the
        // Hermite basis B of L as R = B·C gives L / im(R) ≅ cok(C).
        let mut coords = Vec::with_capacity(rel.cols());
        for col in rel.columns() {
            coords.push(
                lattice
                    .basis_coordinates(&col)?
                    .expect("relations lie in the lattice they help span"),
            );
        }
        let structure = AbelianGroup::new(IntMatrix::from_columns(lattice.rank(), &coords)?);
        let generators = gens
            .columns()
            .map(|c| parent.reduce(&c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subgroup {
            parent: parent.clone(),
            generators,
            ambient_generators: gens,
            lattice,
            structure,
        })
    }

    pub fn from_elements(parent: &AbelianGroup, elements: &[GroupElement]) -> Result<Subgroup> {
        let cols = elements
            .iter()
            .map(|e| parent.lift(e))
            .collect::<Result<Vec<_>>>()?;
        Self::generated(parent, IntMatrix::from_columns(parent.ambient_rank(), &cols)?)
    }

    pub fn trivial(parent: &AbelianGroup) -> Subgroup {
        Self::generated(parent, IntMatrix::zeros(parent.ambient_rank(), 0))
            .expect("empty generator list")
    }

    pub fn whole(parent: &AbelianGroup) -> Subgroup {
        Self::generated(parent, IntMatrix::identity(parent.ambient_rank()))
            .expect("identity generators")
    }

    pub fn parent(&self) -> &AbelianGroup {
        &self.parent
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn ambient_generators(&self) -> &IntMatrix {
        &self.ambient_generators
    }

    pub fn structure(&self) -> &AbelianGroup {
        &self.structure
    }

    pub fn order(&self) -> Order {
        self.structure.order()
    }

    pub fn contains(&self, el: &GroupElement) -> Result<bool> {
        self.lattice.contains(&self.parent.lift(el)?)
    }

    /// Lattice equality via Hermite bases.
    pub fn equals(&self, other: &Subgroup) -> Result<bool> {
        if !self.parent.same_presentation(&other.parent) {
            return Err(Error::DifferentParents);
        }
        Ok(self.lattice.basis() == other.lattice.basis())
    }
}

pub fn subgroups_equal(a: &Subgroup, b: &Subgroup) -> Result<bool> {
    a.equals(b)
}

/// `{x : k·x = 0}`, generated by `(dᵢ / gcd(dᵢ, k))·eᵢ` over the torsion
/// factors. Isomorphic to `⊕ ℤ/gcd(dᵢ, k)`.
pub fn k_torsion(g: &AbelianGroup, k: u64) -> Result<Subgroup> {
    if k == 0 {
        return Err(Error::InvalidArgument("k-torsion needs k >= 1".into()));
    }
    let k = BigInt::from(k);
    let mut gens = Vec::new();
    for (i, d) in g.invariant_factors().iter().enumerate() {
        let mut el = g.zero();
        el.coords[i] = d / d.gcd(&k);
        gens.push(el);
    }
    Subgroup::from_elements(g, &gens)
}
