//! Bitmask subsets over small ground sets.

pub(crate) type Mask = u32;

pub(crate) fn mask_of(elems: &[usize]) -> Mask {
    elems.iter().fold(0, |m, &e| m | (1 << e))
}

pub(crate) fn unmask(mut m: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}
