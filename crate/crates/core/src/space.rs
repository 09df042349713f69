//! The coordinate space V = F^n and its integer encoding.
//!
//! An F-element is identified by its index in the list of subfield
//! elements sorted by K-encoding (for prime F this is just its value).
//! A vector (c_0, ..., c_{n-1}) encodes as sum idx(c_k) q^k.

use alloc::vec;
use alloc::vec::Vec;

use crate::ff::{Elem, Gf};

#[derive(Debug, Clone)]
pub struct VecSpace {
    n: usize,
    q: u32,
    subfield: Vec<Elem>,
    /// K-encoding -> index in `subfield`, `u32::MAX` outside F.
    index: Vec<u32>,
}

impl VecSpace {
    pub(crate) fn new(field: &Gf, subfield: &[Elem], n: usize) -> Self {
        let mut index = vec![u32::MAX; field.order() as usize];
        for (i, a) in subfield.iter().enumerate() {
            index[a.0 as usize] = i as u32;
        }
        VecSpace { n, q: subfield.len() as u32, subfield: subfield.to_vec(), index }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of vectors, q^n.
    pub fn size(&self) -> u32 {
        self.q.pow(self.n as u32)
    }

    /// Index of `a` among the elements of F.
    #[inline]
    pub fn f_index(&self, a: Elem) -> Option<u32> {
        match self.index.get(a.0 as usize) {
            Some(&i) if i != u32::MAX => Some(i),
            _ => None,
        }
    }

    #[inline]
    pub fn f_elem(&self, idx: u32) -> Elem {
        self.subfield[idx as usize]
    }

    pub fn decode(&self, mut enc: u32) -> Vec<Elem> {
        let mut out = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            out.push(self.subfield[(enc % self.q) as usize]);
            enc /= self.q;
        }
        out
    }

    /// Panics if a coordinate is outside F.
    pub fn encode(&self, v: &[Elem]) -> u32 {
        assert_eq!(v.len(), self.n);
        v.iter().rev().fold(0, |acc, &c| acc * self.q + self.f_index(c).expect("coordinate lies in F"))
    }
}
