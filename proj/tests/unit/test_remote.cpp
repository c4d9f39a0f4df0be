#include "doctest.h"

#include "eiscong/errors.hpp"
#include "eiscong/remote.hpp"

#include "httplib.h"

#include <atomic>
#include <thread>

using namespace eiscong;
namespace fs = std::filesystem;

namespace {

// Local stand-in for the database: one rational form and one quadratic form
// whose coefficient ring basis is {1, (1 + a)/2}.
class FakeDatabase {
public:
    FakeDatabase() {
        server_.Get("/api/mf_newforms/", [this](const httplib::Request& req, httplib::Response& res) {
            ++hits;
            if (failures_left > 0) {
                --failures_left;
                res.status = 503;
                return;
            }
            if (req.get_param_value("level") != "5") {
                res.set_content(R"({"data":[]})", "application/json");
                return;
            }
            res.set_content(listing, "application/json");
        });
        server_.Get("/api/mf_hecke_nf/", [this](const httplib::Request& req, httplib::Response& res) {
            ++hits;
            auto label = req.get_param_value("label");
            if (label == "5.4.a.a")
                res.set_content(R"({"data":[{"label":"5.4.a.a","field_poly":[0,1],"an":[[1],[-4],[2],[8],[-5]]}]})", "application/json");
            else
                res.set_content(quadratic, "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~FakeDatabase() {
        server_.stop();
        thread_.join();
    }

    RemoteConfig config(const fs::path& cache) const {
        RemoteConfig c;
        c.endpoint = "http://127.0.0.1:" + std::to_string(port_);
        c.cache_dir = cache;
        c.backoff_initial = std::chrono::milliseconds(1);
        c.backoff_cap = std::chrono::milliseconds(2);
        c.timeout = std::chrono::seconds(5);
        return c;
    }

    std::atomic<int> hits{0};
    std::atomic<int> failures_left{0};
    std::string listing =
        R"({"data":[{"label":"5.4.a.a","level":5,"weight":4,"atkin_lehner_eigenvals":[[5,1]]},)"
        R"({"label":"5.4.a.b","level":5,"weight":4,"atkin_lehner_eigenvals":[[5,-1]]}]})";
    std::string quadratic =
        R"({"data":[{"label":"5.4.a.b","field_poly":[-1,-1,1],"hecke_ring_numerators":[[1,0],[1,1]],)"
        R"("hecke_ring_denominators":[1,2],"an":[[1,0],[0,2],[123456789012345678901234567890,-1]]}]})";

private:
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
};

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("eiscong_remote_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("fetch converts, validates and caches") {
    FakeDatabase db;
    auto cache = scratch("ok");
    auto before = network_attempts();
    auto forms = fetch_remote(5, 4, db.config(cache));
    CHECK(network_attempts() - before == 3);
    REQUIRE(forms.size() == 2);
    CHECK(forms[0].label == "5.4.a.a");
    CHECK(forms[0].coeff(2) == NFCoefficient(BigRat(-4)));
    CHECK(forms[1].al_signs.at(5) == -1);
    // 2 * (1 + a)/2 = 1 + a
    CHECK(forms[1].coeff(2) == NFCoefficient({1, 1}, 1));
    // c - (1 + a)/2
    CHECK(forms[1].coeff(3) == NFCoefficient({BigInt("246913578024691357802469135779"), -1}, 2));
    CHECK(fs::exists(cache / "5.4.a.a.json"));
    CHECK(load_fixture(cache / "5.4.a.b.json") == forms[1]);
}

TEST_CASE("transient failures are retried") {
    FakeDatabase db;
    db.failures_left = 2;
    auto forms = fetch_remote(5, 4, db.config(scratch("retry")));
    CHECK(forms.size() == 2);
}

TEST_CASE("persistent failures give NetworkError after three attempts") {
    FakeDatabase db;
    db.failures_left = 100;
    CHECK_THROWS_AS(fetch_remote(5, 4, db.config(scratch("down"))), NetworkError);
    CHECK(db.hits == 3);
}

TEST_CASE("unreachable endpoint") {
    RemoteConfig c;
    c.endpoint = "http://127.0.0.1:1";
    c.backoff_initial = std::chrono::milliseconds(1);
    c.cache_dir = scratch("unreachable");
    CHECK_THROWS_AS(fetch_remote(5, 4, c), NetworkError);
}

TEST_CASE("payloads without expansion or Atkin-Lehner data are schema errors") {
    FakeDatabase db;
    db.listing = R"({"data":[{"label":"5.4.a.a","level":5,"weight":4}]})";
    auto cache = scratch("schema");
    CHECK_THROWS_AS(fetch_remote(5, 4, db.config(cache)), SchemaError);
    CHECK_FALSE(fs::exists(cache / "5.4.a.a.json"));

    CHECK_THROWS_AS(record_from_remote(R"({"label":"5.4.a.a","level":5,"weight":4,"atkin_lehner_eigenvals":[[5,1]]})",
                                       R"({"field_poly":[0,1]})", "x"),
                    SchemaError);
}

TEST_CASE("invalid remote records are never cached") {
    FakeDatabase db;
    db.listing = R"({"data":[{"label":"5.4.a.a","level":5,"weight":4,"atkin_lehner_eigenvals":[[5,1],[7,1]]}]})";
    auto cache = scratch("invalid");
    CHECK_THROWS_AS(fetch_remote(5, 4, db.config(cache)), SchemaError);
    CHECK_FALSE(fs::exists(cache / "5.4.a.a.json"));
}

TEST_CASE("empty listing") {
    FakeDatabase db;
    CHECK(fetch_remote(7, 4, db.config(scratch("empty"))).empty());
}
