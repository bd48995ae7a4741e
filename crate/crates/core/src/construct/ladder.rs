//! The halving ladder of 2:1 rectangles under the triangle T.

/// Top levels y_i and right columns x_i of the rectangle ladder for the
/// triangle of apex width N. Rectangle i holds the holes of the levels
/// y_{i+1}+1 ..= y_i in the columns N ..= x_i - 1; by construction the two
/// ranges always have equal size y_i - y_{i+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectangleLadder {
    pub apex: i64,
    /// y_1 > y_2 > ... > y_{k+1} = 1 (empty when k = 0).
    pub y: Vec<i64>,
    /// x_1 ..= x_k, with x_i = N + ceil(y_i / 2).
    pub x: Vec<i64>,
    pub k: usize,
}

pub fn rectangle_ladder(apex: i64) -> RectangleLadder {
    assert!(apex >= 1);
    if apex <= 2 {
        return RectangleLadder { apex, y: Vec::new(), x: Vec::new(), k: 0 };
    }
    let mut y = vec![apex - 1];
    while *y.last().unwrap() >= 2 {
        let cur = *y.last().unwrap();
        y.push(cur - (cur + 1) / 2);
    }
    let k = y.len() - 1;
    let x = y[..k].iter().map(|&yi| apex + (yi + 1) / 2).collect();
    RectangleLadder { apex, y, x, k }
}

impl RectangleLadder {
    /// Level span of rectangle i (1-based): (y_{i+1}, y_i].
    pub fn levels(&self, i: usize) -> std::ops::RangeInclusive<i64> {
        (self.y[i] + 1)..=self.y[i - 1]
    }

    /// Hole columns of rectangle i (1-based): N ..= x_i - 1.
    pub fn columns(&self, i: usize) -> std::ops::RangeInclusive<i64> {
        self.apex..=(self.x[i - 1] - 1)
    }

    /// y_i - y_{i+1}, the common size of the level and column ranges.
    pub fn delta(&self, i: usize) -> i64 {
        self.y[i - 1] - self.y[i]
    }

    /// The rectangle (1-based) holding level j, if any. Level 1 and the
    /// degenerate ladders have none.
    pub fn rectangle_of_level(&self, j: i64) -> Option<usize> {
        (1..=self.k).find(|&i| self.levels(i).contains(&j))
    }

    /// x-extent to keep marks out of for rectangle i: the widest rows fully
    /// below the rectangle, [N - y_{i+1}, N + y_{i+1}]. For even y_i this is
    /// exactly the x-projection of the rectangle.
    pub fn mark_exclusion(&self, i: usize) -> std::ops::RangeInclusive<i64> {
        (self.apex - self.y[i])..=(self.apex + self.y[i])
    }
}
