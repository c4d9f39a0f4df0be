#include "doctest.h"

#include "eiscong/errors.hpp"
#include "eiscong/newform.hpp"

#include <fstream>
#include <sstream>

using namespace eiscong;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = EISCONG_FIXTURE_DIR;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("eiscong_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

NewformRecord level38() { return load_fixture(kFixtures / "38.2.a.b.json"); }

bool has_code(const std::vector<Violation>& v, const std::string& code) {
    for (const auto& x : v)
        if (x.code == code) return true;
    return false;
}

}  // namespace

TEST_CASE("level 38 record") {
    auto r = level38();
    CHECK(validate(r).empty());
    CHECK(r.level == 38);
    CHECK(r.weight == 2);
    CHECK(r.field_degree() == 1);
    CHECK(r.al_signs == std::map<std::int64_t, int>{{2, -1}, {19, 1}});
    std::vector<long> head{1, 1, -1, 1, -4};
    for (std::size_t n = 1; n <= head.size(); ++n) CHECK(r.coeff(static_cast<std::int64_t>(n)) == NFCoefficient(BigRat(head[n - 1])));
}

TEST_CASE("validation violations") {
    auto r = level38();
    auto bad = r;
    bad.an[0] = NFCoefficient(BigRat(2));
    CHECK(has_code(validate(bad), "NotNormalized"));
    bad = r;
    bad.level = 12;
    bad.label = "12.2.a.a";
    bad.al_signs = {{2, 1}, {3, 1}};
    CHECK(has_code(validate(bad), "LevelNotSquarefree"));
    bad = r;
    bad.al_signs.erase(19);
    CHECK(has_code(validate(bad), "SignDomainMismatch"));
    bad = r;
    bad.al_signs[19] = 3;
    CHECK(has_code(validate(bad), "SignNotUnit"));
    bad = r;
    bad.field_poly = {1, 2};
    CHECK(has_code(validate(bad), "PolyNotMonic"));
    bad = r;
    bad.field_poly = {1};
    CHECK(has_code(validate(bad), "PolyDegreeZero"));
    bad = r;
    bad.weight = 3;
    bad.label = "38.3.a.b";
    CHECK(has_code(validate(bad), "WeightNotEven"));
    bad = r;
    bad.an.push_back(NFCoefficient({0, 1}, 1));
    CHECK(has_code(validate(bad), "CoefficientDegree"));
    bad = r;
    bad.label = "57.2.a.a";
    CHECK(has_code(validate(bad), "LabelMismatch"));
    bad = r;
    bad.an.clear();
    CHECK(has_code(validate(bad), "NoCoefficients"));
}

TEST_CASE("every fixture round-trips byte for byte") {
    int count = 0;
    for (const auto& entry : fs::directory_iterator(kFixtures)) {
        if (entry.path().filename() == "manifest.json") continue;
        auto record = load_fixture(entry.path());
        auto text = serialize(record);
        CHECK_MESSAGE(text + "\n" == slurp(entry.path()), entry.path());
        CHECK(parse_record(text) == record);
        ++count;
    }
    CHECK(count == 22);
}

TEST_CASE("big integers survive") {
    auto r = load_fixture(kFixtures / "465.6.a.g.json");
    CHECK(r.field_degree() == 13);
    CHECK(r.field_poly[0] == BigInt("-866822400"));
    BigInt widest = 0;
    for (const auto& c : r.an)
        for (const auto& x : c.num()) widest = std::max(widest, BigInt(abs(x)));
    CHECK(mpz_sizeinbase(widest.get_mpz_t(), 2) > 64);
}

TEST_CASE("parse errors carry field or line") {
    try {
        parse_record("{\"label\": \"38.2.a.b\",\n \"weight\": 2,\n \"level\": }");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    auto text = slurp(kFixtures / "38.2.a.b.json");
    auto broken = text;
    broken.replace(broken.find("\"weight\":2"), 10, "\"weight\":\"2\"");
    try {
        parse_record(broken);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.field() == "weight");
    }
    auto missing = text;
    missing.replace(missing.find(",\"source\""), 1, ",\"extra\":1,");
    CHECK_THROWS_AS(parse_record(missing), ParseError);
    CHECK_THROWS_AS(parse_record("[1,2]"), ParseError);
    CHECK_THROWS_AS(parse_record("{\"label\":\"x\",\"label\":\"y\"}"), ParseError);
}

TEST_CASE("load_fixture rejects invalid records") {
    auto dir = scratch("invalid");
    auto r = level38();
    r.an[0] = NFCoefficient(BigRat(2));
    write_record(r, dir / "bad.json");
    CHECK_THROWS_AS(load_fixture(dir / "bad.json"), ValidationError);
    CHECK_THROWS_AS(load_fixture(dir / "absent.json"), IoError);
    CHECK_FALSE(fs::exists(dir / "bad.json.tmp"));
}

TEST_CASE("fixture set index and manifest") {
    FixtureSet set(kFixtures);
    CHECK(set.labels(114, 2) == std::vector<std::string>{"114.2.a.a", "114.2.a.b", "114.2.a.c"});
    CHECK(set.is_complete(114, 2));
    CHECK(set.is_complete(57, 6));
    CHECK_FALSE(set.is_complete(465, 6));
    CHECK(set.newform_count(465, 6) == 9);
    CHECK(set.labels(11, 2).empty());
    CHECK(set.path_of("57.6.a.f").filename() == "57.6.a.f.json");
    CHECK_THROWS_AS(set.path_of("11.2.a.a"), IoError);
    CHECK(set.spaces().size() == 7);
    CHECK_THROWS_AS(FixtureSet("/nonexistent/dir"), IoError);
}

TEST_CASE("duplicate labels and stale manifests are rejected") {
    auto dir = scratch("dup");
    auto r = level38();
    write_record(r, dir / "a.json");
    write_record(r, dir / "b.json");
    CHECK_THROWS_AS(FixtureSet{dir}, ValidationError);
    fs::remove(dir / "b.json");
    std::ofstream(dir / "manifest.json") << R"({"spaces":[{"level":38,"weight":2,"complete":true,"labels":["38.2.a.a","38.2.a.b"]}]})";
    CHECK_THROWS_AS(FixtureSet{dir}, ValidationError);
}

TEST_CASE("list_newforms is fixture first, then cache") {
    FixtureSet set(kFixtures);
    CHECK(list_newforms(57, 6, set).size() == 6);
    auto cache = scratch("cache");
    auto extra = level38();
    extra.label = "38.2.a.z";
    write_record(extra, cache / "38.2.a.z.json");
    write_record(level38(), cache / "38.2.a.b.json");
    auto forms = list_newforms(38, 2, set, cache);
    REQUIRE(forms.size() == 3);
    CHECK(forms[2].label == "38.2.a.z");
    CHECK(list_newforms(11, 2, set, cache).empty());
}

TEST_CASE("sha256") {
    auto dir = scratch("sha");
    std::ofstream(dir / "abc.txt") << "abc";
    CHECK(sha256_file(dir / "abc.txt") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
