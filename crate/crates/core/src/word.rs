//! Packed basis words.
//!
//! A word is a sequence of letters (indices `0..16`) packed into a `u64`,
//! first letter in the highest nibble. Words of the same length compare in
//! lexicographic order as plain integers. Lengths are carried by context
//! (tensor degree, Lie degree); maps never mix lengths.

pub type Word = u64;

pub const MAX_WORD_LEN: usize = 15;

#[inline]
pub fn pack(letters: &[u8]) -> Word {
    debug_assert!(letters.len() <= MAX_WORD_LEN);
    let mut w = 0u64;
    for (i, &l) in letters.iter().enumerate() {
        debug_assert!(l < 16);
        w |= (l as u64) << (60 - 4 * i);
    }
    w
}

#[inline]
pub fn unpack(w: Word, len: usize) -> Vec<u8> {
    (0..len).map(|i| letter(w, i)).collect()
}

#[inline]
pub fn letter(w: Word, i: usize) -> u8 {
    ((w >> (60 - 4 * i)) & 0xf) as u8
}

#[inline]
pub fn set_letter(w: Word, i: usize, l: u8) -> Word {
    let shift = 60 - 4 * i;
    (w & !(0xfu64 << shift)) | ((l as u64) << shift)
}

/// Concatenation of a length-`la` word with a length-`lb` word.
#[inline]
pub fn concat(a: Word, la: usize, b: Word) -> Word {
    a | (b >> (4 * la))
}

/// Replace the letter at position `i` by a whole word of length
/// `insert_len`, shifting the suffix. Assumes the result still fits.
pub fn replace_at(w: Word, i: usize, insert: Word, insert_len: usize) -> Word {
    let prefix = if i == 0 {
        0
    } else {
        w & (u64::MAX << (64 - 4 * i))
    };
    let mid = insert >> (4 * i);
    let suffix_shift = 4 * (i + insert_len);
    let suffix = if suffix_shift >= 64 {
        0
    } else {
        (w << (4 * (i + 1))) >> suffix_shift
    };
    prefix | mid | suffix
}

/// Remove positions `i < j` (0-based) from a length-`len` word.
pub fn remove_two(w: Word, len: usize, i: usize, j: usize) -> Word {
    let mut out = Vec::with_capacity(len - 2);
    for k in 0..len {
        if k != i && k != j {
            out.push(letter(w, k));
        }
    }
    pack(&out)
}

/// Sort letters ascending, returning the packed sorted word and the sign of
/// the sorting permutation. `None` when a letter repeats.
pub fn sort_signed(letters: &[u8]) -> Option<(Word, i64)> {
    let mut v = letters.to_vec();
    let mut sign = 1i64;
    // insertion sort, counting inversions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for k in 1..v.len() {
        if v[k - 1] == v[k] {
            return None;
        }
    }
    Some((pack(&v), sign))
}
