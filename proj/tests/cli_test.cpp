#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string cli = NPCHANGE_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("npchange_cli_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

int run(const std::string& args) {
    const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_constant_csv(const fs::path& p, std::size_t n) {
    std::ofstream out(p);
    out << "x,y\n";
    std::mt19937_64 engine(1);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        out << normal(engine) << ",3.5\n";
}

} // namespace

TEST_CASE("constant-response csv: no change detected") {
    TempDir tmp;
    const fs::path csv = tmp.path / "flat.csv";
    write_constant_csv(csv, 100);
    const fs::path out = tmp.path / "out";
    REQUIRE(run("detect --input " + csv.string() + " --bandwidth 1 --grid-m 10" +
                " --permutations 20 --seed 1 --out-dir " + out.string()) == 0);
    const std::string summary = slurp(out / "summary.json");
    CHECK(summary.find("\"change_detected\": false") != std::string::npos);
    CHECK(summary.find("\"k_hat\": null") != std::string::npos);
    CHECK(fs::exists(out / "profile.tsv"));
    CHECK(fs::exists(out / "perm_maxima.txt"));
    CHECK(fs::exists(out / "manifest.json"));
}

TEST_CASE("generated change series is detected near the truth") {
    TempDir tmp;
    const fs::path csv = tmp.path / "m41.csv";
    REQUIRE(run("gen --dgp arma --model m41 --n 500 --theta 0.4 --seed 3 --out " +
                csv.string()) == 0);
    const fs::path out = tmp.path / "out";
    REQUIRE(run("detect --input " + csv.string() + " --x-col x --y-col y --bandwidth 1" +
                " --permutations 50 --seed 3 --out-dir " + out.string()) == 0);
    const std::string summary = slurp(out / "summary.json");
    REQUIRE(summary.find("\"change_detected\": true") != std::string::npos);
    const auto pos = summary.find("\"k_hat\": ");
    REQUIRE(pos != std::string::npos);
    const long k = std::strtol(summary.c_str() + pos + 9, nullptr, 10);
    CHECK(k >= 185);
    CHECK(k <= 215);
}

TEST_CASE("byte-identical reruns, including across worker counts") {
    TempDir tmp;
    const fs::path csv = tmp.path / "m41.csv";
    REQUIRE(run("gen --dgp arma --model m41 --n 300 --theta 0.4 --seed 5 --out " +
                csv.string()) == 0);
    const std::string base = "detect --input " + csv.string() +
                             " --bandwidth 1 --grid-m 20 --permutations 30 --seed 9 --out-dir ";
    setenv("NPCHANGE_THREADS", "1", 1);
    REQUIRE(run(base + (tmp.path / "a").string()) == 0);
    setenv("NPCHANGE_THREADS", "3", 1);
    REQUIRE(run(base + (tmp.path / "b").string()) == 0);
    unsetenv("NPCHANGE_THREADS");
    for (const char* name : {"summary.json", "profile.tsv", "perm_maxima.txt", "manifest.json"})
        CHECK(slurp(tmp.path / "a" / name) == slurp(tmp.path / "b" / name));
}

TEST_CASE("replay reproduces machine outputs byte-identically") {
    TempDir tmp;
    const fs::path csv = tmp.path / "series.csv";
    REQUIRE(run("gen --dgp arma --model m42 --delta-phi 0.5 --n 200 --theta 0.4 --seed 7 --out " +
                csv.string()) == 0);
    const fs::path first = tmp.path / "first";
    REQUIRE(run("detect --input " + csv.string() +
                " --bandwidth 0.8 --grid-m 15 --permutations 25 --seed 13 --out-dir " +
                first.string()) == 0);
    const fs::path second = tmp.path / "second";
    REQUIRE(run("replay " + (first / "manifest.json").string() + " --out-dir " +
                second.string()) == 0);
    for (const char* name : {"summary.json", "profile.tsv", "perm_maxima.txt", "manifest.json"})
        CHECK(slurp(first / name) == slurp(second / name));
}

TEST_CASE("segment command on a no-change csv") {
    TempDir tmp;
    const fs::path csv = tmp.path / "flat.csv";
    write_constant_csv(csv, 150);
    const fs::path out = tmp.path / "out";
    REQUIRE(run("segment --input " + csv.string() + " --bandwidth 1 --grid-m 10" +
                " --permutations 20 --seed 2 --out-dir " + out.string()) == 0);
    const std::string summary = slurp(out / "summary.json");
    CHECK(summary.find("\"change_points\": []") != std::string::npos);
    CHECK(fs::exists(out / "segments.tsv"));
    CHECK(fs::exists(out / "changepoints.txt"));
}

TEST_CASE("segment command finds two strong well-separated changes") {
    TempDir tmp;
    // Piecewise: linear, then quadratic, then linear again; tiny noise.
    const fs::path csv = tmp.path / "two.csv";
    {
        std::ofstream out(csv);
        out << "x,y\n";
        std::mt19937_64 engine(11);
        std::normal_distribution<double> xdist(0.0, 1.0), noise(0.0, 0.1);
        const std::size_t n = 900;
        for (std::size_t t = 1; t <= n; ++t) {
            const double x = xdist(engine);
            const double phi = (t <= n / 3 || t > 2 * n / 3) ? 1.0 + x : x * x;
            out << x << "," << phi + noise(engine) << "\n";
        }
    }
    const fs::path out = tmp.path / "out";
    REQUIRE(run("segment --input " + csv.string() + " --bandwidth 1 --grid-m 30" +
                " --permutations 60 --seed 4 --out-dir " + out.string()) == 0);
    const std::string cps = slurp(out / "changepoints.txt");
    std::istringstream lines(cps);
    std::vector<long> ks;
    std::string line;
    while (std::getline(lines, line))
        if (!line.empty())
            ks.push_back(std::strtol(line.c_str(), nullptr, 10));
    bool near_first = false, near_second = false;
    for (long k : ks) {
        near_first = near_first || std::labs(k - 300) <= 30;
        near_second = near_second || std::labs(k - 600) <= 30;
    }
    CHECK(near_first);
    CHECK(near_second);
}

TEST_CASE("bandwidth command emits the search curve") {
    TempDir tmp;
    const fs::path csv = tmp.path / "m42.csv";
    REQUIRE(run("gen --dgp arma --model m42 --delta-phi 0.5 --n 300 --theta 0.4 --seed 5 --out " +
                csv.string()) == 0);
    const fs::path out = tmp.path / "out";
    REQUIRE(run("bandwidth --input " + csv.string() + " --candidates 8 --grid-m 20 --out-dir " +
                out.string()) == 0);
    const std::string fh = slurp(out / "fh.tsv");
    CHECK(std::count(fh.begin(), fh.end(), '\n') == 9); // header + 8 rows
    CHECK(slurp(out / "summary.json").find("h_star") != std::string::npos);
}

TEST_CASE("exit codes distinguish failure classes") {
    TempDir tmp;
    CHECK(run("detect --input /nonexistent.csv --out-dir " + (tmp.path / "o").string()) == 2);

    const fs::path bad = tmp.path / "bad.csv";
    {
        std::ofstream out(bad);
        out << "x,y\n1.0,2.0\noops,3.0\n";
    }
    CHECK(run("detect --input " + bad.string() + " --out-dir " + (tmp.path / "o2").string()) ==
          3);

    const fs::path ok = tmp.path / "ok.csv";
    write_constant_csv(ok, 100);
    CHECK(run("detect --input " + ok.string() + " --bandwidth -1 --out-dir " +
              (tmp.path / "o3").string()) == 4);

    const fs::path shorty = tmp.path / "short.csv";
    {
        std::ofstream out(shorty);
        out << "x,y\n0.1,1\n0.5,2\n0.9,3\n";
    }
    CHECK(run("detect --input " + shorty.string() + " --bandwidth 1 --grid-m 2 --out-dir " +
              (tmp.path / "o4").string()) == 5);
}

TEST_CASE("schema errors name the offending column and row") {
    TempDir tmp;
    const fs::path csv = tmp.path / "cols.csv";
    {
        std::ofstream out(csv);
        out << "a,b\n1,2\n";
    }
    const std::string cmd = cli + " detect --input " + csv.string() + " --out-dir " +
                            (tmp.path / "o").string() + " 2> " +
                            (tmp.path / "err.txt").string();
    std::system(cmd.c_str());
    const std::string err = slurp(tmp.path / "err.txt");
    CHECK(err.find("column 'x' not found") != std::string::npos);
}

TEST_CASE("simulate N=1 report matches its single replication") {
    TempDir tmp;
    const fs::path out = tmp.path / "sim";
    REQUIRE(run("simulate --mode bias --method nwss --dgp arma --model m41 --n 200"
                " --theta 0.4 --N 1 --seed 21 --out-dir " +
                out.string()) == 0);
    const std::string report = slurp(out / "report.json");
    CHECK(report.find("\"replications\": 1") != std::string::npos);
    const std::string devs = slurp(out / "khat_deviations.txt");
    CHECK(std::count(devs.begin(), devs.end(), '\n') == 1);
}

TEST_CASE("labels pass through to change-point outputs") {
    TempDir tmp;
    const fs::path csv = tmp.path / "labeled.csv";
    {
        std::ofstream out(csv);
        out << "date,x,y\n";
        std::mt19937_64 engine(31);
        std::normal_distribution<double> xdist(0.0, 1.0), noise(0.0, 0.1);
        for (int t = 1; t <= 400; ++t) {
            const double x = xdist(engine);
            const double phi = t <= 160 ? 1.0 + x : x * x;
            out << "d" << t << "," << x << "," << phi + noise(engine) << "\n";
        }
    }
    const fs::path out = tmp.path / "out";
    REQUIRE(run("detect --input " + csv.string() +
                " --label-col date --bandwidth 1 --permutations 30 --seed 6 --out-dir " +
                out.string()) == 0);
    const std::string summary = slurp(out / "summary.json");
    CHECK(summary.find("\"k_hat_label\": \"d") != std::string::npos);
}
