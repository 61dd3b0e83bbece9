#include "zom/geo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace zom {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

struct KeyHash {
    std::size_t operator()(const CellKey& k) const {
        std::uint64_t v = ((std::uint64_t)(std::uint32_t)k.x << 32) | (std::uint32_t)k.y;
        v ^= v >> 33;
        v *= 0xff51afd7ed558ccdULL;
        v ^= v >> 33;
        return (std::size_t)v;
    }
};

} // namespace

CellKey GridIndex::key_of(const Point& p) const {
    return CellKey{(int)std::floor((p.x - origin_x) / cell_side),
                   (int)std::floor((p.y - origin_y) / cell_side)};
}

int GridIndex::cell_index(CellKey key) const {
    auto it = std::lower_bound(cell_keys.begin(), cell_keys.end(), key,
                               [](const CellKey& a, const CellKey& b) {
                                   return a.x != b.x ? a.x < b.x : a.y < b.y;
                               });
    if (it == cell_keys.end() || !(*it == key)) return -1;
    return (int)(it - cell_keys.begin());
}

double GridIndex::min_cell_dist2(CellKey u, CellKey v) const {
    double dx = (double)std::max(0, std::abs(u.x - v.x) - 1) * cell_side;
    double dy = (double)std::max(0, std::abs(u.y - v.y) - 1) * cell_side;
    return dx * dx + dy * dy;
}

bool GridIndex::within_delta(CellKey u, CellKey v) const {
    return min_cell_dist2(u, v) <= delta * delta;
}

std::vector<double> delta_candidates(const PointSet& points, double eps) {
    const int n_a = (int)points.a.size(), n_b = (int)points.b.size();
    if (n_a == 0 || n_b == 0) return {};

    auto nearest = [&](const Point& p, const std::vector<Point>& side) {
        double best = std::numeric_limits<double>::max();
        for (const Point& q : side) best = std::min(best, squared_dist(p, q));
        return best;
    };
    double lower2 = 0;
    for (const Point& p : points.a) lower2 = std::max(lower2, nearest(p, points.b));
    for (const Point& q : points.b) lower2 = std::max(lower2, nearest(q, points.a));

    if (lower2 == 0) {
        // Every point coincides with one on the other side. If the
        // coincidence pairing is perfect the answer is 0; otherwise lift
        // the lower bound to the smallest positive pairwise distance.
        std::map<std::pair<double, double>, int> balance;
        for (const Point& p : points.a) balance[{p.x, p.y}]++;
        for (const Point& q : points.b) balance[{q.x, q.y}]--;
        bool coincident = n_a == n_b;
        for (auto& [loc, c] : balance)
            if (c != 0) coincident = false;
        if (coincident) return {0.0};

        double min_pos2 = std::numeric_limits<double>::max();
        for (const Point& p : points.a)
            for (const Point& q : points.b) {
                double d2 = squared_dist(p, q);
                if (d2 > 0) min_pos2 = std::min(min_pos2, d2);
            }
        lower2 = min_pos2;
    }

    double upper2 = 0;
    std::vector<Point> all = points.a;
    all.insert(all.end(), points.b.begin(), points.b.end());
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            upper2 = std::max(upper2, squared_dist(all[i], all[j]));

    const double lower = std::sqrt(lower2), upper = std::sqrt(upper2);
    std::vector<double> ladder;
    double d = lower;
    const double ratio = 1.0 + eps / 3.0;
    while (true) {
        ladder.push_back(d);
        if (d >= upper) break;
        d *= ratio;
    }
    return ladder;
}

GridIndex build_grid(const PointSet& points, double delta, double eps, int r) {
    if (delta <= 0) throw input_error("grid needs delta > 0");
    if (eps <= 0 || eps > 1) throw input_error("grid needs 0 < eps <= 1");
    int sq = (int)std::llround(std::sqrt((double)r));
    if (r < 1 || sq * sq != r) throw input_error("grid parameter r must be a perfect square");

    GridIndex g;
    g.delta = delta;
    g.eps = eps;
    g.r = r;
    g.sqrt_r = sq;
    g.cell_side = eps * delta / (6.0 * kSqrt2);
    g.pts = points;

    double min_x = std::numeric_limits<double>::max(), min_y = min_x;
    double max_x = std::numeric_limits<double>::lowest(), max_y = max_x;
    auto absorb = [&](const Point& p) {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    };
    for (const Point& p : points.a) absorb(p);
    for (const Point& p : points.b) absorb(p);
    if (points.a.empty() && points.b.empty()) min_x = min_y = max_x = max_y = 0;
    g.origin_x = min_x;
    g.origin_y = min_y;
    g.square_side = std::max(max_x - min_x, max_y - min_y);

    // Bucket points into active cells.
    std::unordered_map<CellKey, std::pair<std::vector<int>, std::vector<int>>, KeyHash> cells;
    for (int i = 0; i < (int)points.a.size(); ++i) cells[g.key_of(points.a[i])].first.push_back(i);
    for (int i = 0; i < (int)points.b.size(); ++i) cells[g.key_of(points.b[i])].second.push_back(i);

    for (auto& [key, _] : cells) g.cell_keys.push_back(key);
    std::sort(g.cell_keys.begin(), g.cell_keys.end(),
              [](const CellKey& a, const CellKey& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    g.cell_a.resize(g.cell_count());
    g.cell_b.resize(g.cell_count());
    g.cell_of_a.assign(points.a.size(), -1);
    g.cell_of_b.assign(points.b.size(), -1);
    for (int c = 0; c < g.cell_count(); ++c) {
        auto& bucket = cells[g.cell_keys[c]];
        g.cell_a[c] = std::move(bucket.first);
        g.cell_b[c] = std::move(bucket.second);
        for (int i : g.cell_a[c]) g.cell_of_a[i] = c;
        for (int i : g.cell_b[c]) g.cell_of_b[i] = c;
    }

    // Neighborhoods: scan the window of cells within delta; when the
    // active set is smaller than the window, test active pairs directly.
    // Both enumerate exactly the active cells at min distance <= delta.
    g.neighbors.resize(g.cell_count());
    long long radius = (long long)std::floor(delta / g.cell_side) + 2;
    long long window = (2 * radius + 1) * (2 * radius + 1);
    if (window <= (long long)g.cell_count()) {
        for (int c = 0; c < g.cell_count(); ++c) {
            CellKey base = g.cell_keys[c];
            for (int dx = (int)-radius; dx <= (int)radius; ++dx)
                for (int dy = (int)-radius; dy <= (int)radius; ++dy) {
                    CellKey other{base.x + dx, base.y + dy};
                    int idx = g.cell_index(other);
                    if (idx != -1 && g.within_delta(base, other)) g.neighbors[c].push_back(idx);
                }
        }
    } else {
        for (int c = 0; c < g.cell_count(); ++c)
            for (int d = 0; d < g.cell_count(); ++d)
                if (g.within_delta(g.cell_keys[c], g.cell_keys[d])) g.neighbors[c].push_back(d);
    }

    auto [kv, kh] = choose_shift(g);
    g.kappa_v = kv;
    g.kappa_h = kh;

    // Box of a cell: the slab between consecutive chosen lines per axis.
    auto slab = [&](int cell_coord, int kappa) {
        int shifted = cell_coord - kappa;
        return shifted >= 0 ? shifted / g.sqrt_r : -((-shifted - 1) / g.sqrt_r) - 1;
    };
    g.box_of.resize(g.cell_count());
    g.boundary_cell.assign(g.cell_count(), 0);
    for (int c = 0; c < g.cell_count(); ++c) {
        const CellKey key = g.cell_keys[c];
        int bx = slab(key.x, g.kappa_v), by = slab(key.y, g.kappa_h);
        g.box_of[c] = {bx, by};
        // Distance from the cell to the nearest bounding line of its box,
        // in cell units; boundary when within delta on either axis.
        auto axis_gap = [&](int coord, int kappa, int box) {
            long long left = (long long)coord - (kappa + (long long)box * g.sqrt_r);
            long long right = (kappa + (long long)(box + 1) * g.sqrt_r) - (coord + 1);
            return (double)std::min(left, right) * g.cell_side;
        };
        double gap = std::min(axis_gap(key.x, g.kappa_v, bx), axis_gap(key.y, g.kappa_h, by));
        g.boundary_cell[c] = gap <= g.delta ? 1 : 0;
    }
    return g;
}

std::vector<long long> shift_boundary_counts(const GridIndex& grid, int axis) {
    std::vector<long long> counts(grid.sqrt_r, 0);
    const double side = grid.cell_side;
    const int sq = grid.sqrt_r;
    for (int c = 0; c < grid.cell_count(); ++c) {
        const CellKey key = grid.cell_keys[c];
        int coord = axis == 0 ? key.x : key.y;
        long long weight = (long long)grid.cell_a[c].size() + (long long)grid.cell_b[c].size();
        for (int i = 1; i <= sq; ++i) {
            // Lines of shift class i sit at (i + j*sq)*side; only those
            // crossing the bounding square count. The line-to-cell gap is
            // V-shaped in j, so the nearest in-square line is the
            // unrestricted argmin clamped into the in-square j range.
            long long jlo = (long long)std::ceil(-(double)i / sq);
            long long jhi = (long long)std::floor((grid.square_side / side - i) / sq);
            if (jlo > jhi) continue;
            long long jc = (long long)std::llround(((double)coord + 0.5 - i) / sq);
            bool hit = false;
            for (long long j = jc - 1; j <= jc + 1 && !hit; ++j) {
                long long jj = std::clamp(j, jlo, jhi);
                double line = ((double)i + (double)jj * sq) * side;
                double lo = (double)coord * side, hi = lo + side;
                double gap = line < lo ? lo - line : (line > hi ? line - hi : 0.0);
                if (gap <= grid.delta) hit = true;
            }
            if (hit) counts[i - 1] += weight;
        }
    }
    return counts;
}

std::pair<int, int> choose_shift(const GridIndex& grid) {
    auto pick = [&](int axis) {
        std::vector<long long> counts = shift_boundary_counts(grid, axis);
        int best = 1;
        for (int i = 2; i <= grid.sqrt_r; ++i)
            if (counts[i - 1] < counts[best - 1]) best = i;
        return best;
    };
    return {pick(0), pick(1)};
}

int implicit_weight(const GridIndex& grid, int cell_i, int cell_j) {
    return grid.box_of[cell_i] == grid.box_of[cell_j] ? 0 : 1;
}

int default_grid_r(int n) {
    double target = std::ceil(std::pow((double)std::max(1, n), 2.0 / 3.0));
    int sq = (int)std::ceil(std::sqrt(target));
    return sq * sq;
}

} // namespace zom
