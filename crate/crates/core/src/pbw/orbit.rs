//! The orbit of one coloring under component-preserving leg permutations.

use std::collections::HashMap;

use crate::graph::ColoredGraph;
use crate::relations::{swap_legs, LegRow};

#[derive(Debug, Clone)]
pub struct OrbitState {
    /// `arrangement[pos]` is the original position of the leg now at `pos`.
    pub arrangement: Vec<usize>,
    /// `(πD)_u`.
    pub graph: ColoredGraph,
    pub sign: i8,
    /// `next[a]` is the state `U_i π` for `i = adjacent[a]`.
    pub next: Vec<usize>,
    /// The state and letter this one was first reached from.
    pub parent: Option<(usize, usize)>,
}

/// All of `𝔖_k(D) D`, in breadth-first order from the identity.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub row: LegRow,
    /// Positions `i` with `U_i` in `𝔖_k(D)`.
    pub adjacent: Vec<usize>,
    pub states: Vec<OrbitState>,
}

impl Orbit {
    pub fn new(d: &ColoredGraph, row: LegRow) -> Self {
        let adjacent = row.adjacent_positions();
        let k = row.len();
        let mut states = vec![OrbitState {
            arrangement: (0..k).collect(),
            graph: d.clone(),
            sign: 1,
            next: Vec::new(),
            parent: None,
        }];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(states[0].arrangement.clone(), 0);
        let mut cursor = 0;
        while cursor < states.len() {
            let mut next = Vec::with_capacity(adjacent.len());
            for (a, &i) in adjacent.iter().enumerate() {
                let mut arr = states[cursor].arrangement.clone();
                arr.swap(i, i + 1);
                let id = match index.get(&arr) {
                    Some(&id) => id,
                    None => {
                        let id = states.len();
                        let graph =
                            swap_legs(&states[cursor].graph, row.vertices[i], row.vertices[i + 1]);
                        index.insert(arr.clone(), id);
                        states.push(OrbitState {
                            arrangement: arr,
                            graph,
                            sign: -states[cursor].sign,
                            next: Vec::new(),
                            parent: Some((cursor, a)),
                        });
                        id
                    }
                };
                next.push(id);
            }
            states[cursor].next = next;
            cursor += 1;
        }
        Orbit {
            row,
            adjacent,
            states,
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn letter_index(&self, i: usize) -> Option<usize> {
        self.adjacent.iter().position(|&x| x == i)
    }
}
