use alloc::collections::BTreeMap;

use crate::scalar::Scalar;

/// Adds `c` at key `k`, dropping the entry if it cancels.
pub(crate) fn add_into<K: Ord + Clone>(map: &mut BTreeMap<K, Scalar>, k: &K, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(k) {
        Some(e) => {
            *e += c;
            if e.is_zero() {
                map.remove(k);
            }
        }
        None => {
            map.insert(k.clone(), c.clone());
        }
    }
}

/// `acc += c * other`.
pub(crate) fn axpy<K: Ord + Clone>(acc: &mut BTreeMap<K, Scalar>, c: &Scalar, other: &BTreeMap<K, Scalar>) {
    if c.is_zero() {
        return;
    }
    for (k, v) in other {
        add_into(acc, k, &(c * v));
    }
}
