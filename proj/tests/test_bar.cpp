#include <gtest/gtest.h>

#include "support.hpp"

using namespace segal;
using testing_support::bar_degeneracy;
using testing_support::bar_face;

namespace {

const LevelMap identity_map = [](std::size_t, SimplexId x) { return x; };

using Matrix = std::vector<std::vector<std::size_t>>;  // rows x columns

Matrix to_matrix(const Grid& g)
{
    Matrix m(g.shape[0], std::vector<std::size_t>(g.shape[1]));
    for (std::size_t r = 0; r < g.shape[0]; ++r)
        for (std::size_t c = 0; c < g.shape[1]; ++c)
            m[r][c] = g.cells[r * g.shape[1] + c];
    return m;
}

/// Oracle for a generator acting on a 2-d grid: the classical bar formulas
/// applied to every column (direction 0) or every row (direction 1).
Matrix act_on_matrix(const FiniteMonoid& mon, const Matrix& m, std::size_t rows, std::size_t cols, std::size_t dir,
                     bool is_face, std::size_t i)
{
    auto apply = [&](const std::vector<std::size_t>& v) {
        return is_face ? bar_face(mon, v, i) : bar_degeneracy(mon, v, i);
    };
    if (dir == 1) {
        Matrix out;
        for (std::size_t r = 0; r < rows; ++r)
            out.push_back(apply(m[r]));
        return out;
    }
    std::vector<std::vector<std::size_t>> columns;
    for (std::size_t c = 0; c < cols; ++c) {
        std::vector<std::size_t> col;
        for (std::size_t r = 0; r < rows; ++r)
            col.push_back(m[r][c]);
        columns.push_back(apply(col));
    }
    const std::size_t new_rows = is_face ? rows - 1 : rows + 1;
    Matrix out(new_rows, std::vector<std::size_t>(cols));
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < new_rows; ++r)
            out[r][c] = columns[c][r];
    return out;
}

std::vector<std::size_t> product_table(const FiniteMonoid& m)
{
    std::vector<std::size_t> t;
    for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = 0; b < m.size(); ++b)
            t.push_back(m.mul(a, b));
    return t;
}

}  // namespace

TEST(Bar, FoldOneIsTheNerve)
{
    std::vector<FiniteMonoid> pool = {leftzero3(), idempotent2(), trivial_monoid()};
    for (const auto& name : builtin_commutative_monoid_names())
        pool.push_back(builtin_monoid(name));
    for (const auto& m : pool) {
        const auto b = diag(bar(m, 1, 4));
        const auto n = nerve(m, 4);
        EXPECT_EQ(check_isomorphism(*b, *n, identity_map, 4), std::nullopt);
    }
}

TEST(Bar, LevelCardinalities)
{
    const auto b = bar(cyclic_group(2), 2, 2);
    EXPECT_EQ(b->level_size(std::vector<std::size_t>{2, 2}), 16u);
    EXPECT_EQ(b->level_size(std::vector<std::size_t>{0, 2}), 1u);
    const auto b3 = bar(cyclic_group(3), 3, 2);
    EXPECT_EQ(b3->level_size(std::vector<std::size_t>{1, 1, 1}), 3u);
    EXPECT_EQ(b3->level_size(std::vector<std::size_t>{2, 1, 2}), 81u);
}

TEST(Bar, InnerFaceMultipliesRows)
{
    const auto m = cyclic_group(2);
    const auto b = bar(m, 2, 2);
    const std::vector<std::size_t> lv = {2, 2};
    for (SimplexId x = 0; x < 16; ++x) {
        const Grid g = b->decode(lv, x);
        const Grid out = b->act_grid_along(0, face_op(2, 1), g);
        ASSERT_EQ(out.shape, std::vector<std::size_t>({1, 2}));
        for (std::size_t c = 0; c < 2; ++c)
            EXPECT_EQ(out.cells[c], (g.cells[c] + g.cells[2 + c]) % 2);
    }
}

TEST(Bar, GeneratorsMatchRowColumnOracle)
{
    for (const auto& m : {cyclic_group(3), builtin_monoid("Z/2xZ/2"), idempotent2()}) {
        const auto b = bar(m, 2, 4);
        for (std::size_t rows = 0; rows <= 3; ++rows)
            for (std::size_t cols = 0; cols <= 3; ++cols) {
                const std::vector<std::size_t> lv = {rows, cols};
                const SimplexId size = b->level_size(lv);
                const SimplexId step = size > 2000 ? size / 997 : 1;
                for (SimplexId x = 0; x < size; x += step) {
                    const Grid g = b->decode(lv, x);
                    const Matrix mat = to_matrix(g);
                    for (std::size_t dir = 0; dir < 2; ++dir) {
                        const std::size_t k = lv[dir];
                        for (std::size_t i = 0; k >= 1 && i <= k; ++i) {
                            const Grid out = b->act_grid_along(dir, face_op(k, i), g);
                            const std::size_t r = dir == 0 ? rows - 1 : rows, c = dir == 1 ? cols - 1 : cols;
                            if (r > 0 && c > 0) {
                                ASSERT_EQ(to_matrix(out), act_on_matrix(m, mat, rows, cols, dir, true, i));
                            } else {
                                ASSERT_EQ(out.cells.size(), 0u);
                            }
                        }
                        for (std::size_t i = 0; i <= k; ++i) {
                            const Grid out = b->act_grid_along(dir, degeneracy_op(k + 1, i), g);
                            if (rows > 0 && cols > 0) {
                                ASSERT_EQ(to_matrix(out), act_on_matrix(m, mat, rows, cols, dir, false, i));
                            }
                        }
                    }
                }
            }
    }
}

TEST(Bar, NoncommutativeRejectedWithWitness)
{
    try {
        bar(leftzero3(), 2, 2);
        FAIL();
    } catch (const NonCommutative& e) {
        EXPECT_EQ(leftzero3().name(e.left()), "a");
        EXPECT_EQ(leftzero3().name(e.right()), "b");
        EXPECT_NE(std::string(e.what()).find("a.b = a but b.a = b"), std::string::npos) << e.what();
    }
    EXPECT_NO_THROW(bar(leftzero3(), 1, 3));
    EXPECT_NO_THROW(bar(idempotent2(), 2, 2));
    EXPECT_THROW(bar(cyclic_group(2), std::vector<std::size_t>{}), ValidationError);
}

TEST(Bar, AuditPassesForCommutativeMonoids)
{
    AuditOptions opt;
    opt.samples = 8;
    opt.exhaustive_limit = 256;
    for (const auto& name : builtin_commutative_monoid_names()) {
        const auto m = builtin_monoid(name);
        for (std::size_t n = 1; n <= 3; ++n) {
            const auto r = audit_bar(*bar(m, n, n == 3 ? 3 : 4), opt);
            EXPECT_TRUE(r.passed()) << name << " n=" << n << ": " << r.violations.front();
            EXPECT_GT(r.checks, 0u);
        }
    }
}

TEST(Bar, AuditCoversUnindexableLevels)
{
    AuditOptions opt;
    opt.samples = 4;
    const auto b = bar(cyclic_group(2), 3, 4);
    EXPECT_FALSE(b->indexable_size(std::vector<std::size_t>{4, 4, 4}).has_value());
    const auto r = audit_bar(*b, opt);
    EXPECT_TRUE(r.passed()) << r.violations.front();
}

TEST(Bar, GateBypassedFailsInterchange)
{
    BarOptions unsafe;
    unsafe.enforce_commutativity = false;
    const auto b = bar(leftzero3(), 2, 2, unsafe);
    const auto grid = audit_bar(*b);
    ASSERT_FALSE(grid.passed());
    EXPECT_NE(grid.violations.front().find("interchange"), std::string::npos) << grid.violations.front();
    const auto ids = audit_functoriality(*b);
    ASSERT_FALSE(ids.passed());
    EXPECT_NE(ids.violations.front().find("interchange"), std::string::npos) << ids.violations.front();
}

TEST(Bar, SegalInEveryDirection)
{
    for (const auto& name : {"Z/2", "Z/3", "Z/4", "Z/2xZ/2"})
        for (std::size_t n = 1; n <= 2; ++n) {
            const auto r = check_segal_multi(bar(builtin_monoid(name), n, 4), 4, 2);
            EXPECT_TRUE(r.all_bijective()) << name << " n=" << n;
        }
}

TEST(HSpace, NerveOfZ3)
{
    const auto m = cyclic_group(3);
    const auto h = hspace_structure(*nerve(m, 2));
    EXPECT_EQ(h.carrier, 3u);
    EXPECT_EQ(h.table, product_table(m));
    EXPECT_EQ(h.unit, m.unit());
    EXPECT_TRUE(is_grouplike(h));
}

TEST(HSpace, SliceOfTwoFoldBar)
{
    const auto m = cyclic_group(2);
    const auto h = hspace_structure(*slice_ones(bar(m, 2, 2), 1, 1));
    EXPECT_EQ(h.table, product_table(m));
}

TEST(HSpace, EverySliceRecoversTheMonoid)
{
    for (const auto& name : builtin_commutative_monoid_names()) {
        const auto m = builtin_monoid(name);
        EXPECT_EQ(hspace_structure(*diag(bar(m, 1, 2))).table, product_table(m)) << name;
        for (std::size_t n = 2; n <= 3; ++n) {
            const auto b = bar(m, n, 2);
            EXPECT_EQ(b->level_size(std::vector<std::size_t>(n, 1)), m.size());
            for (std::size_t l = 0; l < n; ++l) {
                const auto h = hspace_structure(*slice_ones(b, l, 1));
                EXPECT_EQ(h.table, product_table(m)) << name << " n=" << n << " l=" << l;
                EXPECT_EQ(h.unit, m.unit());
                EXPECT_EQ(is_grouplike(h), is_group(m));
            }
        }
    }
}

TEST(HSpace, NoncommutativeFoldOne)
{
    const auto m = leftzero3();
    const auto h = hspace_structure(*nerve(m, 2));
    EXPECT_EQ(h.table, product_table(m));
    EXPECT_FALSE(is_grouplike(h));
}

TEST(HSpace, TrivialMonoid)
{
    const auto n = nerve(trivial_monoid(), 2);
    const auto h = hspace_structure(*n);
    EXPECT_EQ(h.carrier, 1u);
    EXPECT_EQ(h.unit, 0u);
    EXPECT_TRUE(is_grouplike(h));
}

TEST(HSpace, Grouplike)
{
    EXPECT_TRUE(is_grouplike(hspace_structure(*nerve(cyclic_group(4), 2))));
    EXPECT_FALSE(is_grouplike(hspace_structure(*nerve(idempotent2(), 2))));
}

TEST(HSpace, RequiresSegal)
{
    EXPECT_THROW(hspace_structure(*nerve(two_category(), 2)), SegalViolation);
    EXPECT_THROW(hspace_structure(*nerve(cyclic_group(2), 1)), SegalViolation);
}
