//! Heap-based multivariate division.
//!
//! A polynomial under reduction is a sum of "streams" `c * m * g`, one per
//! reduction step plus the initial summands. Streams are merged lazily
//! through a max-heap keyed by their current monomial, so each subtraction
//! costs one heap entry instead of a full merge of the reducer's terms.

use std::cmp::Ordering;

use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder, LANE};
use crate::poly::{Polynomial, Ring, Term};

struct Stream<'a> {
    poly: &'a Polynomial,
    mult: Monomial,
    coeff: u32,
    pos: usize,
    /// Monomial of the current term, `mult * poly[pos]`.
    cur: Monomial,
}

/// Max-heap of stream indices keyed by the stream's current monomial.
trait StreamHeap {
    fn push(&mut self, m: &Monomial, s: usize);
    /// Pops the top stream; `None` when empty.
    fn pop(&mut self) -> Option<usize>;
    /// True when the top entry carries the same monomial as the last popped one.
    fn top_equals_last(&self) -> bool;
}

/// Binary max-heap over fixed-width keys whose lexicographic order is the
/// monomial order. Available for grevlex and single-block elimination on at
/// most 16 variables, which covers every ring the algorithms create in
/// practice.
///
/// A key is a head word (degree, or eliminated exponent and degree) followed
/// by the `N - 1` complemented packed exponent words.
struct KeyHeap<const N: usize> {
    order: MonomialOrder,
    items: Vec<([u64; N], u32)>,
    last: [u64; N],
}

#[inline]
fn key_gt<const N: usize>(a: &[u64; N], b: &[u64; N]) -> bool {
    for i in 0..N {
        if a[i] != b[i] {
            return a[i] > b[i];
        }
    }
    false
}

fn key_heap_supports(order: MonomialOrder, nvars: usize) -> bool {
    nvars <= 16 && matches!(order, MonomialOrder::Grevlex | MonomialOrder::Elim { block: 1 })
}

impl<const N: usize> KeyHeap<N> {
    fn new(order: MonomialOrder) -> Self {
        KeyHeap {
            order,
            items: Vec::new(),
            last: [0; N],
        }
    }

    #[inline]
    fn key(&self, m: &Monomial) -> [u64; N] {
        let w = m.packed_words();
        debug_assert_eq!(w.len() + 1, N);
        let mut key = [0u64; N];
        key[0] = match self.order {
            MonomialOrder::Grevlex => m.degree() as u64,
            _ => ((w[0] >> (64 - LANE)) << 32) | m.degree() as u64,
        };
        for (k, &x) in key[1..].iter_mut().zip(w) {
            *k = !x;
        }
        key
    }
}

impl<const N: usize> StreamHeap for KeyHeap<N> {
    fn push(&mut self, m: &Monomial, s: usize) {
        let k = self.key(m);
        self.items.push((k, s as u32));
        let mut i = self.items.len() - 1;
        while i > 0 {
            let parent = (i - 1) / 2;
            if key_gt(&self.items[i].0, &self.items[parent].0) {
                self.items.swap(i, parent);
                i = parent;
            } else {
                break;
            }
        }
    }

    fn pop(&mut self) -> Option<usize> {
        let n = self.items.len();
        if n == 0 {
            return None;
        }
        self.items.swap(0, n - 1);
        let (k, s) = self.items.pop().expect("nonempty");
        self.last = k;
        let n = self.items.len();
        let mut i = 0;
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut best = i;
            if l < n && key_gt(&self.items[l].0, &self.items[best].0) {
                best = l;
            }
            if r < n && key_gt(&self.items[r].0, &self.items[best].0) {
                best = r;
            }
            if best == i {
                break;
            }
            self.items.swap(i, best);
            i = best;
        }
        Some(s as usize)
    }

    #[inline]
    fn top_equals_last(&self) -> bool {
        self.items.first().is_some_and(|(k, _)| *k == self.last)
    }
}

/// Binary max-heap comparing full monomials under a runtime order.
struct MonoHeap {
    order: MonomialOrder,
    items: Vec<(Monomial, usize)>,
    last: Option<Monomial>,
}

impl MonoHeap {
    #[inline]
    fn greater(&self, i: usize, j: usize) -> bool {
        self.order.cmp(&self.items[i].0, &self.items[j].0) == Ordering::Greater
    }
}

impl StreamHeap for MonoHeap {
    fn push(&mut self, m: &Monomial, s: usize) {
        self.items.push((m.clone(), s));
        let mut i = self.items.len() - 1;
        while i > 0 {
            let parent = (i - 1) / 2;
            if self.greater(i, parent) {
                self.items.swap(i, parent);
                i = parent;
            } else {
                break;
            }
        }
    }

    fn pop(&mut self) -> Option<usize> {
        let n = self.items.len();
        if n == 0 {
            return None;
        }
        self.items.swap(0, n - 1);
        let (m, s) = self.items.pop().expect("nonempty");
        self.last = Some(m);
        let n = self.items.len();
        let mut i = 0;
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut best = i;
            if l < n && self.greater(l, best) {
                best = l;
            }
            if r < n && self.greater(r, best) {
                best = r;
            }
            if best == i {
                break;
            }
            self.items.swap(i, best);
            i = best;
        }
        Some(s)
    }

    fn top_equals_last(&self) -> bool {
        match (self.items.first(), &self.last) {
            (Some((m, _)), Some(l)) => m == l,
            _ => false,
        }
    }
}

/// Reducer set: monic polynomials with cached leading monomials and divmasks.
pub(crate) struct Reducers<'a> {
    polys: Vec<&'a Polynomial>,
    masks: Vec<u64>,
}

impl<'a> Reducers<'a> {
    pub fn new(polys: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        let polys: Vec<&Polynomial> = polys.into_iter().filter(|p| !p.is_zero()).collect();
        debug_assert!(polys.iter().all(|p| p.lc() == 1));
        let masks = polys.iter().map(|p| p.lm().divmask()).collect();
        Reducers { polys, masks }
    }

    #[inline]
    pub fn find_divisor(&self, m: &Monomial) -> Option<&'a Polynomial> {
        let mask = m.divmask();
        for (k, &pm) in self.masks.iter().enumerate() {
            if pm & !mask == 0 && self.polys[k].lm().divides(m) {
                return Some(self.polys[k]);
            }
        }
        None
    }
}

/// Reduces `sum(c_i * m_i * p_i)` (the given summands) by `reducers`.
/// With `full` every term is reduced; otherwise stops at the first
/// irreducible leading term and returns it together with the untouched tail.
pub(crate) fn reduce_sum<'a>(
    ring: Ring,
    summands: Vec<(&'a Polynomial, Monomial, u32, usize)>,
    reducers: &Reducers<'a>,
    full: bool,
) -> Polynomial {
    if key_heap_supports(ring.order, ring.nvars) {
        let order = ring.order;
        match ring.nvars.div_ceil(4) {
            0 => reduce_with_heap(ring, summands, reducers, full, KeyHeap::<1>::new(order)),
            1 => reduce_with_heap(ring, summands, reducers, full, KeyHeap::<2>::new(order)),
            2 => reduce_with_heap(ring, summands, reducers, full, KeyHeap::<3>::new(order)),
            3 => reduce_with_heap(ring, summands, reducers, full, KeyHeap::<4>::new(order)),
            _ => reduce_with_heap(ring, summands, reducers, full, KeyHeap::<5>::new(order)),
        }
    } else {
        let heap = MonoHeap {
            order: ring.order,
            items: Vec::new(),
            last: None,
        };
        reduce_with_heap(ring, summands, reducers, full, heap)
    }
}

fn reduce_with_heap<'a, H: StreamHeap>(
    ring: Ring,
    summands: Vec<(&'a Polynomial, Monomial, u32, usize)>,
    reducers: &Reducers<'a>,
    full: bool,
    mut heap: H,
) -> Polynomial {
    let field: PrimeField = ring.field;
    let mut streams: Vec<Stream<'a>> = Vec::with_capacity(summands.len() + 16);
    for (poly, mult, coeff, pos) in summands {
        if pos < poly.num_terms() && coeff != 0 {
            let cur = poly.terms()[pos].mono.mul(&mult);
            heap.push(&cur, streams.len());
            streams.push(Stream {
                poly,
                mult,
                coeff,
                pos,
                cur,
            });
        }
    }
    let mut out: Vec<Term> = Vec::new();
    let mut reducing = true;
    while let Some(s) = heap.pop() {
        let m = streams[s].cur.clone();
        let mut acc = field.mul(streams[s].coeff, streams[s].poly.terms()[streams[s].pos].coeff);
        advance(&mut streams, &mut heap, s);
        while heap.top_equals_last() {
            let s2 = heap.pop().expect("nonempty");
            let st = &streams[s2];
            acc = field.add(acc, field.mul(st.coeff, st.poly.terms()[st.pos].coeff));
            advance(&mut streams, &mut heap, s2);
        }
        if acc == 0 {
            continue;
        }
        if reducing {
            if let Some(g) = reducers.find_divisor(&m) {
                // reducers are monic: subtract acc * (m / lm g) * g
                let q = g.lm().quotient_of(&m);
                if g.num_terms() > 1 {
                    let cur = g.terms()[1].mono.mul(&q);
                    heap.push(&cur, streams.len());
                    streams.push(Stream {
                        poly: g,
                        mult: q,
                        coeff: field.neg(acc),
                        pos: 1,
                        cur,
                    });
                }
                continue;
            }
        }
        out.push(Term { mono: m, coeff: acc });
        if !full {
            reducing = false;
        }
    }
    Polynomial::from_sorted_terms(ring, out)
}

#[inline]
fn advance<H: StreamHeap>(streams: &mut [Stream<'_>], heap: &mut H, s: usize) {
    let st = &mut streams[s];
    st.pos += 1;
    if st.pos < st.poly.num_terms() {
        st.cur = st.poly.terms()[st.pos].mono.mul(&st.mult);
        heap.push(&st.cur, s);
    }
}

/// Full normal form of `f` by monic `reducers`.
pub(crate) fn normal_form_with(f: &Polynomial, reducers: &Reducers<'_>) -> Polynomial {
    if f.is_zero() {
        return f.clone();
    }
    let one = Monomial::one(f.ring().nvars);
    reduce_sum(f.ring(), vec![(f, one, 1, 0)], reducers, true)
}
