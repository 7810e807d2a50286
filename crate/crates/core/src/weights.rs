//! Weights of the symplectic torus: `w_i = #a_i - #b_i`, and the letter
//! contents lying over a given weight.

use crate::tensor::{a, b, Sym};

/// Symplectic weight of a letter-count vector over `2g` letters.
pub fn sp_weight_of_content(content: &[usize]) -> Vec<i32> {
    content.chunks(2).map(|p| p[0] as i32 - p[1] as i32).collect()
}

pub fn sp_weight_of_letters(letters: &[Sym], genus: usize) -> Vec<i32> {
    let mut w = vec![0; genus];
    for &s in letters {
        w[(s / 2) as usize] += if s % 2 == 0 { 1 } else { -1 };
    }
    w
}

/// Letter contents of total `size` over `2g` letters with symplectic weight `w`.
pub fn contents_of_weight(w: &[i32], size: usize) -> Vec<Vec<usize>> {
    let norm: usize = w.iter().map(|x| x.unsigned_abs() as usize).sum();
    if norm > size || (size - norm) % 2 == 1 {
        return Vec::new();
    }
    let pairs = (size - norm) / 2;
    crate::lie::all_contents(pairs, w.len())
        .into_iter()
        .map(|extra| {
            let mut c = vec![0; 2 * w.len()];
            for (k, &e) in extra.iter().enumerate() {
                c[2 * k] = w[k].max(0) as usize + e;
                c[2 * k + 1] = (-w[k]).max(0) as usize + e;
            }
            c
        })
        .collect()
}

/// Weights `w_1 >= ... >= w_g >= 0` of norm at most `size` and the same parity.
pub fn dominant_sp_weights(size: usize, genus: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    for norm in (size % 2..=size).step_by(2) {
        for p in crate::tableaux::partitions(norm) {
            if p.len() <= genus {
                let mut w: Vec<i32> = p.iter().map(|&x| x as i32).collect();
                w.resize(genus, 0);
                out.push(w);
            }
        }
    }
    out
}

/// Size of the orbit of `w` under permutations and sign changes of coordinates.
pub fn sp_orbit_size(w: &[i32]) -> usize {
    let abs: Vec<usize> = w.iter().map(|x| x.unsigned_abs() as usize).collect();
    let nonzero = abs.iter().filter(|&&x| x > 0).count();
    crate::lie::orbit_size(&abs) << nonzero
}

/// Letter sets `x < y < z` of the tripods spanning the degree one part.
pub fn tripod_letters(genus: usize) -> Vec<[Sym; 3]> {
    let letters: Vec<Sym> = (1..=genus).flat_map(|i| [a(i), b(i)]).collect();
    let mut out = Vec::new();
    for i in 0..letters.len() {
        for j in i + 1..letters.len() {
            for k in j + 1..letters.len() {
                out.push([letters[i], letters[j], letters[k]]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contents_over_zero_weight() {
        // Size 4, genus 2: pairs (2,0), (1,1), (0,2).
        assert_eq!(contents_of_weight(&[0, 0], 4).len(), 3);
        assert!(contents_of_weight(&[1, 0], 4).is_empty());
        assert_eq!(contents_of_weight(&[1, -1], 2), vec![vec![1, 0, 0, 1]]);
    }

    #[test]
    fn orbits_cover_all_words() {
        // (2g)^m words split into weight classes.
        for (m, g) in [(3usize, 2usize), (4, 2), (3, 3)] {
            let total: usize = dominant_sp_weights(m, g)
                .iter()
                .map(|w| {
                    let words: usize = contents_of_weight(w, m)
                        .iter()
                        .map(|c| {
                            let f: usize = (1..=m).product();
                            f / c.iter().map(|&k| (1..=k).product::<usize>()).product::<usize>()
                        })
                        .sum();
                    words * sp_orbit_size(w)
                })
                .sum();
            assert_eq!(total, (2 * g).pow(m as u32));
        }
    }
}
