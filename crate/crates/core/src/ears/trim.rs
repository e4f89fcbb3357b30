use super::{construct, EarsDescriptor};
use crate::error::{Error, Result};
use crate::finite::{Family, RootType};
use crate::linalg::ratio;
use crate::semilattice::union;

/// Halves the extra-long roots of a `BC` system: type `B_l` (or `A1`) with
/// short translations `S ∪ E/2` and the same `L`.
pub fn trim(r: &EarsDescriptor) -> Result<EarsDescriptor> {
    let t = r.root_type();
    if t.family != Family::BC {
        return Err(Error::NotBcType);
    }
    let e = r.e().ok_or(Error::NotBcType)?;
    let s_prime = union(r.s(), &e.scaled_by(&ratio(1, 2)))?;
    let target = if t.rank == 1 {
        RootType::new(Family::A, 1)?
    } else {
        RootType::new(Family::B, t.rank)?
    };
    construct(target, s_prime, r.l().cloned(), None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;
    use crate::linalg::RationalVector;
    use crate::semilattice::SemilatticeData;

    #[test]
    fn bc1_with_odd_extra_long() {
        let z = SemilatticeData::standard(1);
        let odd = SemilatticeData::from_int_cosets(1, &[&[1]], true).unwrap();
        let r = construct("BC1".parse().unwrap(), z, None, Some(odd)).unwrap();
        let t = trim(&r).unwrap();
        assert_eq!(t.root_type().to_string(), "A1");
        let half = Lattice::from_generators(1, &[RationalVector::new(vec![ratio(1, 2)])]);
        assert_eq!(t.s(), &SemilatticeData::full(half));
        assert_eq!(trim(&t), Err(Error::NotBcType));
    }
}
