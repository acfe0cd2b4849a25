//! Channel weights from explicit 16×16 exchange projectors.
//!
//! Pair index is 4·first + second with single-atom index 2·e + n (e, n = 1
//! for spin up). Nothing here goes through the coupled basis.

#![allow(dead_code)]

use num_traits::Num;

pub const DIM: usize = 16;

pub type Matrix<T> = Vec<Vec<T>>;

fn split(p: usize) -> [usize; 4] {
    let (i, j) = (p / 4, p % 4);
    [i / 2, i % 2, j / 2, j % 2]
}

fn join([e1, n1, e2, n2]: [usize; 4]) -> usize {
    4 * (2 * e1 + n1) + 2 * e2 + n2
}

fn swap_electrons(p: usize) -> usize {
    let [e1, n1, e2, n2] = split(p);
    join([e2, n1, e1, n2])
}

fn swap_nuclei(p: usize) -> usize {
    let [e1, n1, e2, n2] = split(p);
    join([e1, n2, e2, n1])
}

fn permutation<T: Num + Clone>(map: fn(usize) -> usize) -> Matrix<T> {
    (0..DIM).map(|r| (0..DIM).map(|c| if map(c) == r { T::one() } else { T::zero() }).collect()).collect()
}

/// (1 + sign·X)/2 for the exchange permutation X.
fn projector<T: Num + Clone>(map: fn(usize) -> usize, sign: i8) -> Matrix<T> {
    let x = permutation::<T>(map);
    let two = T::one() + T::one();
    (0..DIM)
        .map(|r| {
            (0..DIM)
                .map(|c| {
                    let id = if r == c { T::one() } else { T::zero() };
                    let v = if sign > 0 { id + x[r][c].clone() } else { id - x[r][c].clone() };
                    v / two.clone()
                })
                .collect()
        })
        .collect()
}

fn matmul<T: Num + Clone>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    (0..DIM)
        .map(|r| (0..DIM).fold(vec![T::zero(); DIM], |mut row, k| {
            for c in 0..DIM {
                row[c] = row[c].clone() + a[r][k].clone() * b[k][c].clone();
            }
            row
        }))
        .collect()
}

/// ⟨v|M|v⟩ / ⟨v|v⟩ for a real vector.
fn expectation<T: Num + Clone>(m: &Matrix<T>, v: &[T]) -> T {
    let mut num = T::zero();
    let mut den = T::zero();
    for r in 0..DIM {
        den = den + v[r].clone() * v[r].clone();
        for c in 0..DIM {
            num = num + v[r].clone() * m[r][c].clone() * v[c].clone();
        }
    }
    num / den
}

pub fn kron<T: Num + Clone>(x: &[T], y: &[T]) -> Vec<T> {
    (0..DIM).map(|p| x[p / 4].clone() * y[p % 4].clone()).collect()
}

/// Unnormalized |αβ⟩ + |βα⟩, or |αα⟩ when the states coincide.
pub fn plus_pair<T: Num + Clone>(x: &[T], y: &[T], same: bool) -> Vec<T> {
    if same {
        return kron(x, y);
    }
    kron(x, y).into_iter().zip(kron(y, x)).map(|(a, b)| a + b).collect()
}

/// (singlet, triplet) electron-channel weights of the normalized `v`.
pub fn weights_all<T: Num + Clone>(v: &[T]) -> (T, T) {
    let es = projector::<T>(swap_electrons, -1);
    let et = projector::<T>(swap_electrons, 1);
    (expectation(&es, v), expectation(&et, v))
}

/// Weights keeping only components symmetric under whole-atom exchange:
/// electron singlet with nuclear singlet, electron triplet with nuclear triplet.
pub fn weights_exchange_symmetric<T: Num + Clone>(v: &[T]) -> (T, T) {
    let es_ns = matmul(&projector::<T>(swap_electrons, -1), &projector::<T>(swap_nuclei, -1));
    let et_nt = matmul(&projector::<T>(swap_electrons, 1), &projector::<T>(swap_nuclei, 1));
    (expectation(&es_ns, v), expectation(&et_nt, v))
}

/// High-field atom kets in the single-atom basis: a = ↓⇑, b = ↓⇓, c = ↑⇓, d = ↑⇑.
pub fn high_field_atom<T: Num + Clone>(label: char) -> Vec<T> {
    let idx = match label {
        'a' => 1,
        'b' => 0,
        'c' => 2,
        'd' => 3,
        _ => panic!("label {label}"),
    };
    (0..4).map(|i| if i == idx { T::one() } else { T::zero() }).collect()
}
