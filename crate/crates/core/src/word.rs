//! Eilenberg-Zilber degeneracy words and monotone-map bookkeeping.
//!
//! A degeneracy word `[j1, j2, ..., jr]` with `j1 > j2 > ... > jr` denotes the
//! composite operator `s_{j1} ∘ s_{j2} ∘ ... ∘ s_{jr}` (rightmost applied
//! first). Every simplex of a simplicial set has a unique expression as such a
//! word applied to a non-degenerate simplex; all operator algebra in this
//! crate reduces to rewriting against the simplicial identities.

/// Strictly decreasing list of degeneracy indices.
pub type Word = Vec<usize>;

/// Post-compose a normalized word with one more degeneracy: `s_j ∘ s_word`.
///
/// Uses `s_a s_b = s_{b+1} s_a` for `a <= b` to sink the new index into
/// place while keeping the word strictly decreasing.
pub fn push_degeneracy(word: &mut Word, j: usize) {
    #[allow(unused_mut)]
    let mut j = j;
    for pos in 0..word.len() {
        if j <= word[pos] {
            word[pos] += 1;
        } else {
            word.insert(pos, j);
            return;
        }
    }
    word.push(j);
}

/// Compose two normalized words: `s_outer ∘ s_inner`.
pub fn compose(outer: &[usize], inner: &[usize]) -> Word {
    let mut acc = inner.to_vec();
    for &j in outer.iter().rev() {
        push_degeneracy(&mut acc, j);
    }
    acc
}

/// Resolve `d_i ∘ s_word`.
///
/// Returns the prefix word that survives on the outside together with the
/// residual face index, if the face was not cancelled by one of the
/// degeneracies. Rewrites with `d_i s_j = s_{j-1} d_i` (i < j),
/// `d_j s_j = d_{j+1} s_j = id`, and `d_i s_j = s_j d_{i-1}` (i > j+1).
pub fn face_through(word: &[usize], i: usize) -> (Word, Option<usize>) {
    let mut prefix = Vec::with_capacity(word.len());
    let mut i = i;
    for (pos, &j) in word.iter().enumerate() {
        if i < j {
            prefix.push(j - 1);
        } else if i == j || i == j + 1 {
            prefix.extend_from_slice(&word[pos + 1..]);
            return (prefix, None);
        } else {
            prefix.push(j);
            i -= 1;
        }
    }
    (prefix, Some(i))
}

/// Evaluate the monotone surjection encoded by a word at every point of
/// `[0, top]`: the word `s_{j1}...s_{jr}` on an m-simplex corresponds to the
/// surjection `[m+r] -> [m]` obtained by collapsing at each index in turn.
pub fn as_surjection(word: &[usize], top: usize) -> Vec<usize> {
    (0..=top)
        .map(|mut t| {
            for &j in word {
                if t > j {
                    t -= 1;
                }
            }
            t
        })
        .collect()
}

/// Degeneracy word of a weakly increasing tuple: the descending list of
/// positions `p` with `tuple[p] == tuple[p+1]`.
pub fn repeats_word<T: PartialEq>(tuple: &[T]) -> Word {
    let mut w: Word = (0..tuple.len().saturating_sub(1))
        .filter(|&p| tuple[p] == tuple[p + 1])
        .collect();
    w.reverse();
    w
}

/// Enumerate all valid degeneracy words of length `len` on top of an
/// `m`-dimensional simplex (so the result has dimension `m + len`).
/// Entry `k` (0-based, outermost first) is bounded by `m + len - 1 - k`.
pub fn words_of_length(m: usize, len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(m: usize, len: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let k = cur.len();
        let hi = m + len - 1 - k;
        for j in (0..=hi).rev() {
            if let Some(&prev) = cur.last() {
                if j >= prev {
                    continue;
                }
            }
            // the innermost entry must be applicable to an m-simplex after
            // the deeper ones: entry at position k needs j <= m + (len-1-k)
            cur.push(j);
            rec(m, len, cur, out);
            cur.pop();
        }
    }
    rec(m, len, &mut cur, &mut out);
    // deterministic order: lexicographically increasing
    out.sort();
    out
}
