//! Reference computations for tests.
//!
//! Everything here works on dense vectors indexed by subset mask or on
//! plain nested loops, and never calls the library's combination, distance,
//! conflict or aggregation code.

#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use trollconf::pipeline::{Message, MessageFrame, Thread, UserId};
use trollconf::{Frame, MassFunction, SubsetId};

/// Random bba with 1..=max_focal distinct non-empty focal sets.
pub fn random_mass<R: Rng>(rng: &mut R, frame: &Arc<Frame>, max_focal: usize) -> MassFunction<f64> {
    let size = frame.power_set_size() as u32;
    let count = rng.gen_range(1..=max_focal.min(size as usize - 1));
    let mut subsets: Vec<u32> = Vec::new();
    while subsets.len() < count {
        let s = rng.gen_range(1..size);
        if !subsets.contains(&s) {
            subsets.push(s);
        }
    }
    let weights: Vec<f64> = subsets.iter().map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    MassFunction::new(
        frame,
        subsets
            .iter()
            .zip(&weights)
            .map(|(&s, &w)| (SubsetId::from_bits(s), w / total)),
    )
    .expect("random bba is valid")
}

pub fn frame_of_size(n: usize) -> Arc<Frame> {
    Frame::new((0..n).map(|i| format!("w{i}"))).unwrap()
}

pub fn dense(m: &MassFunction<f64>) -> Vec<f64> {
    let mut v = vec![0.0; m.frame().power_set_size()];
    for &(s, x) in m.focal_elements() {
        v[s.bits() as usize] = x;
    }
    v
}

pub fn dense_conjunctive(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len()];
    for i in 0..a.len() {
        for j in 0..b.len() {
            out[i & j] += a[i] * b[j];
        }
    }
    out
}

pub fn dense_disjunctive(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len()];
    for i in 0..a.len() {
        for j in 0..b.len() {
            out[i | j] += a[i] * b[j];
        }
    }
    out
}

pub fn dense_dempster(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = dense_conjunctive(a, b);
    let k = out[0];
    out[0] = 0.0;
    for x in out.iter_mut() {
        *x /= 1.0 - k;
    }
    out
}

fn members(mask: usize, n: usize) -> Vec<bool> {
    (0..n).map(|i| (mask >> i) & 1 == 1).collect()
}

/// Jaccard entry from explicit membership vectors.
pub fn jaccard_entry(a: usize, b: usize, n: usize) -> f64 {
    let (ma, mb) = (members(a, n), members(b, n));
    let inter = ma.iter().zip(&mb).filter(|(x, y)| **x && **y).count();
    let union = ma.iter().zip(&mb).filter(|(x, y)| **x || **y).count();
    if union == 0 {
        1.0
    } else {
        inter as f64 / union as f64
    }
}

pub fn dense_jousselme(a: &[f64], b: &[f64], n: usize) -> f64 {
    let diff: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let mut q = 0.0;
    for i in 0..diff.len() {
        for j in 0..diff.len() {
            q += diff[i] * diff[j] * jaccard_entry(i, j, n);
        }
    }
    (0.5 * q).max(0.0).sqrt()
}

fn included(x: usize, y: usize, n: usize) -> bool {
    let (mx, my) = (members(x, n), members(y, n));
    mx.iter().zip(&my).all(|(a, b)| !*a || *b)
}

pub fn dense_inclusion_degree(a: &[f64], b: &[f64], n: usize) -> f64 {
    let fa: Vec<usize> = (0..a.len()).filter(|&i| a[i] > 0.0).collect();
    let fb: Vec<usize> = (0..b.len()).filter(|&i| b[i] > 0.0).collect();
    let mut hits = 0.0;
    for &x in &fa {
        for &y in &fb {
            if included(x, y, n) {
                hits += 1.0;
            }
        }
    }
    hits / (fa.len() * fb.len()) as f64
}

pub fn dense_conflict(a: &[f64], b: &[f64], n: usize) -> f64 {
    let sigma = dense_inclusion_degree(a, b, n).max(dense_inclusion_degree(b, a, n));
    (1.0 - sigma) * dense_jousselme(a, b, n)
}

pub fn oracle_conflict(m1: &MassFunction<f64>, m2: &MassFunction<f64>) -> f64 {
    dense_conflict(&dense(m1), &dense(m2), m1.frame().len())
}

/// Direct transcription of the per-message and per-user sums, indexing the
/// thread by position with no precomputed counts.
pub fn naive_conf_msg(thread: &Thread<f64>, rank: usize) -> f64 {
    let msgs = thread.messages();
    let k = rank - 1;
    let author = &msgs[k].author;
    let np_total = msgs[..k].iter().filter(|m| &m.author != author).count();
    if np_total == 0 {
        return 0.0;
    }
    let mut total = 0.0;
    for user in thread.users() {
        if user == author {
            continue;
        }
        let mut np_j = 0usize;
        let mut sum = 0.0;
        for s in 0..k {
            if &msgs[s].author == user {
                np_j += 1;
                sum += oracle_conflict(&msgs[k].bba, &msgs[s].bba);
            }
        }
        if np_j == 0 {
            continue;
        }
        total += (np_j as f64 / np_total as f64) * (sum / np_j as f64);
    }
    total
}

pub fn naive_conf_user(thread: &Thread<f64>, user: &UserId) -> f64 {
    let mut n_i = 0usize;
    let mut sum = 0.0;
    for m in thread.messages() {
        if &m.author == user {
            n_i += 1;
            sum += naive_conf_msg(thread, m.rank);
        }
    }
    sum / n_i as f64
}

/// Random valid thread with 2..=max_users users and up to max_messages
/// messages (at least one per user).
pub fn random_thread<R: Rng>(rng: &mut R, max_users: usize, max_messages: usize) -> Thread<f64> {
    let topics = rng.gen_range(1..=3);
    let frame = MessageFrame::new(topics, rng.gen_range(1..=topics)).unwrap();
    let n_users = rng.gen_range(2..=max_users);
    let n_msgs = rng.gen_range(n_users..=max_messages.max(n_users));
    let users: Vec<UserId> = (1..=n_users).map(|i| UserId::new(format!("U{i}"))).collect();
    let mut authors: Vec<usize> = (0..n_users).collect();
    while authors.len() < n_msgs {
        authors.push(rng.gen_range(0..n_users));
    }
    // shuffle
    for i in (1..authors.len()).rev() {
        let j = rng.gen_range(0..=i);
        authors.swap(i, j);
    }
    let messages = authors
        .iter()
        .enumerate()
        .map(|(i, &a)| Message {
            author: users[a].clone(),
            rank: i + 1,
            bba: random_mass(rng, frame.frame(), 3),
        })
        .collect();
    Thread::new(frame, users, messages).unwrap()
}

/// Best 2-split of 1-D values by within-cluster sum of squares, found by
/// trying every cut of the sorted order. Returns the ids of the upper part.
pub fn exhaustive_split(values: &[(usize, f64)]) -> (Vec<usize>, f64) {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    let wcss = |part: &[(usize, f64)]| {
        let mean = part.iter().map(|p| p.1).sum::<f64>() / part.len() as f64;
        part.iter().map(|p| (p.1 - mean).powi(2)).sum::<f64>()
    };
    let mut best = (Vec::new(), f64::INFINITY);
    for cut in 1..sorted.len() {
        let cost = wcss(&sorted[..cut]) + wcss(&sorted[cut..]);
        if cost < best.1 {
            let mut upper: Vec<usize> = sorted[cut..].iter().map(|p| p.0).collect();
            upper.sort_unstable();
            best = (upper, cost);
        }
    }
    best
}

pub fn wcss_of(values: &[(usize, f64)], upper: &[usize]) -> f64 {
    let (hi, lo): (Vec<f64>, Vec<f64>) = {
        let hi = values.iter().filter(|v| upper.contains(&v.0)).map(|v| v.1).collect();
        let lo = values.iter().filter(|v| !upper.contains(&v.0)).map(|v| v.1).collect();
        (hi, lo)
    };
    let part = |xs: &[f64]| {
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>()
    };
    part(&hi) + part(&lo)
}
