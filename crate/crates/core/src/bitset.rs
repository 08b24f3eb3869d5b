/// Set of object indices packed into one machine word.
///
/// Everything in this crate lives under the 64-object cap, so a single `u64`
/// covers any marked set, active set, or color class.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ObjSet(pub u64);

impl ObjSet {
    pub const EMPTY: ObjSet = ObjSet(0);

    #[inline]
    pub fn full(len: u32) -> ObjSet {
        debug_assert!(len <= 64);
        if len == 64 {
            ObjSet(u64::MAX)
        } else {
            ObjSet((1u64 << len) - 1)
        }
    }

    #[inline]
    pub fn singleton(i: u32) -> ObjSet {
        ObjSet(1u64 << i)
    }

    #[inline]
    pub fn contains(self, i: u32) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: u32) {
        self.0 |= 1u64 << i;
    }

    #[inline]
    pub fn with(self, i: u32) -> ObjSet {
        ObjSet(self.0 | 1u64 << i)
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: ObjSet) -> ObjSet {
        ObjSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersect(self, other: ObjSet) -> ObjSet {
        ObjSet(self.0 & other.0)
    }

    #[inline]
    pub fn minus(self, other: ObjSet) -> ObjSet {
        ObjSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset_of(self, other: ObjSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Ascending iterator over member indices.
    #[inline]
    pub fn iter(self) -> BitIter {
        BitIter(self.0)
    }
}

impl std::fmt::Debug for ObjSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct BitIter(u64);

impl Iterator for BitIter {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(i)
    }
}
