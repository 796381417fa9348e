#include "iup/error.hpp"
#include "iup/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace iup;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("iup_io_" + name)).string();
}

}  // namespace

TEST(Io, RationalsAreStrings) {
    EXPECT_EQ(to_json(rat(43, 100)), Json("43/100"));
    EXPECT_EQ(to_json(ExtRational::neg_inf()), Json("-inf"));
    EXPECT_EQ(rational_from_json(Json("0.43")), rat(43, 100));
    EXPECT_EQ(rational_from_json(Json(3)), Rational(3));
    EXPECT_THROW(rational_from_json(Json::array()), Error);
}

TEST(Io, ConstraintMatrixRoundTrip) {
    ConstraintMatrix m = ma_matrix(rat(1, 3), 2, rat(43, 100));
    AlphaPtr alpha = alpha_from_json(to_json(*m.alpha()));
    EXPECT_EQ(*alpha, *m.alpha());
    EXPECT_EQ(constraint_matrix_from_json(to_json(m), alpha).bounds(), m.bounds());
}

TEST(Io, ProblemRoundTrip) {
    for (const auto& p : {problem_3_1(), problem_3_2(), problem_3_3(), problem_3_4()})
        EXPECT_EQ(problem_from_json(to_json(p)), p);
}

TEST(Io, CatalogEntryRoundTripVerifiesIdentically) {
    CatalogEntry e = make_m1_m2({0, 0, 0, 0, 0}, rat(2, 5));
    std::string path = temp_path("bundle.json");
    write_json_file(path, to_json(e));
    CatalogEntry back = catalog_entry_from_json(read_json_file(path));
    EXPECT_EQ(back.which, e.which);
    EXPECT_EQ(back.bundle.problem, e.bundle.problem);
    ASSERT_EQ(back.bundle.candidates.size(), e.bundle.candidates.size());
    for (size_t k = 0; k < e.bundle.candidates.size(); ++k)
        EXPECT_EQ(back.bundle.candidates[k].bounds(), e.bundle.candidates[k].bounds());
    EXPECT_EQ(verify(back.bundle).pass, verify(e.bundle).pass);
    std::filesystem::remove(path);
}

TEST(Io, OrbitCsvRoundTrip) {
    Orbit o;
    o.points = {{0.25, 0.5}, {0.125, 0.75}};
    o.labels = {"001", "011"};
    std::string path = temp_path("orbit.csv");
    write_orbit_csv(path, o);
    Orbit back = read_orbit_csv(path);
    EXPECT_EQ(back.points, o.points);
    EXPECT_EQ(back.labels, o.labels);
    std::filesystem::remove(path);
}

TEST(Io, MissingFileIsAnError) { EXPECT_THROW(read_json_file("/nonexistent/iup.json"), Error); }
