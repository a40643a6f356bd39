#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "simcal/commands.hpp"
#include "simcal/csv.hpp"
#include "simcal/model_io.hpp"
#include "test_support.hpp"

using namespace simcal;
using namespace simcal::testing;

namespace {

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) n += c == '\n';
    return n;
}

// Small end-to-end fixture: dataset plus a quickly trained base model.
struct Pipeline {
    TempDir dir{"simcal_cmd"};
    GenerateOptions gen;
    TrainBaseOptions base;

    Pipeline() {
        gen.sim_out = dir.file("sim.csv");
        gen.shots_out = dir.file("shots.csv");
        gen.n_sim = 400;
        gen.n_shots = 20;
        gen.seed = 101;
        cmd_generate(gen);

        base.sim_csv = gen.sim_out;
        base.model_out = dir.file("model.json");
        base.train.epochs = 40;
        base.train.batch_size = 50;
        base.train.seed = 102;
        std::ostringstream sink;
        cmd_train_base(base, sink);
    }
};

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SIMCAL_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("cmd_generate writes both datasets with the advertised shapes") {
    TempDir dir("simcal_cmd");
    GenerateOptions opt;
    opt.sim_out = dir.file("sim.csv");
    opt.shots_out = dir.file("shots.csv");
    opt.n_sim = 120;
    opt.n_shots = 15;
    opt.seed = 7;
    cmd_generate(opt);

    const std::string sim_text = read_file(opt.sim_out);
    CHECK(count_lines(sim_text) == 121);  // header + rows
    const std::string shots_text = read_file(opt.shots_out);
    CHECK(count_lines(shots_text) == 16);

    // 2 id columns + 7 sim + 7 exp.
    const std::string header = shots_text.substr(0, shots_text.find('\n'));
    CHECK(std::count(header.begin(), header.end(), ',') == 15);

    SUBCASE("rerunning with the same seed is byte-identical") {
        GenerateOptions again = opt;
        again.sim_out = dir.file("sim2.csv");
        again.shots_out = dir.file("shots2.csv");
        cmd_generate(again);
        CHECK(read_file(again.sim_out) == sim_text);
        CHECK(read_file(again.shots_out) == shots_text);
    }

    SUBCASE("a different seed changes the data") {
        GenerateOptions other = opt;
        other.seed = 8;
        other.sim_out = dir.file("sim3.csv");
        other.shots_out = dir.file("shots3.csv");
        cmd_generate(other);
        CHECK(read_file(other.sim_out) != sim_text);
    }
}

TEST_CASE("cmd_train_base trains, reports, and persists deterministically") {
    Pipeline p;
    const std::string model_bytes = read_file(p.base.model_out);

    std::ostringstream out;
    TrainBaseOptions again = p.base;
    again.model_out = p.dir.file("model2.json");
    cmd_train_base(again, out);
    CHECK(read_file(again.model_out) == model_bytes);
    CHECK(out.str().find("explained variance") != std::string::npos);

    const ModelFile mf = load_model_file(p.base.model_out);
    CHECK(!mf.has_transfer);
    CHECK(mf.model.n_experiments_used == 0);
    CHECK(nets_equal(mf.model.base, mf.model.calibrated));
    CHECK(mf.base_config.seed == 102);
}

TEST_CASE("cmd_train_base refuses a dataset too small to split") {
    TempDir dir("simcal_cmd");
    GenerateOptions gen;
    gen.sim_out = dir.file("sim.csv");
    gen.shots_out = dir.file("shots.csv");
    gen.n_sim = 19;
    gen.n_shots = 2;
    gen.seed = 1;
    cmd_generate(gen);

    TrainBaseOptions opt;
    opt.sim_csv = gen.sim_out;
    opt.model_out = dir.file("model.json");
    std::ostringstream sink;
    CHECK_THROWS_AS(cmd_train_base(opt, sink), std::runtime_error);
}

TEST_CASE("cmd_transfer calibrates, reports the holdout, and persists") {
    Pipeline p;
    TransferOptions opt;
    opt.model_in = p.base.model_out;
    opt.shots_csv = p.gen.shots_out;
    opt.model_out = p.dir.file("calibrated.json");
    opt.avp_out = p.dir.file("avp.csv");
    opt.holdout_size = 5;
    opt.train.epochs = 30;
    opt.train.seed = 103;

    std::ostringstream out;
    cmd_transfer(opt, out);

    // 20 shots, holdout of 5: indices 15..19 are reported.
    CHECK(out.str().find("holdout shots: 15 16 17 18 19") != std::string::npos);
    CHECK(out.str().find("baseline_error") != std::string::npos);

    const ModelFile mf = load_model_file(opt.model_out);
    CHECK(mf.has_transfer);
    CHECK(mf.model.n_experiments_used == 15);
    CHECK(mf.transfer_config.epochs == 30);
    for (std::size_t l = 0; l < 4; ++l) {
        CHECK(layers_equal(mf.model.calibrated.layers[l], mf.model.base.layers[l]));
    }

    // header + (15 train + 5 holdout) * 7 observables
    CHECK(count_lines(read_file(opt.avp_out)) == 1 + 20 * 7);

    SUBCASE("rerunning is byte-identical") {
        TransferOptions again = opt;
        again.model_out = p.dir.file("calibrated2.json");
        again.avp_out = p.dir.file("avp2.csv");
        std::ostringstream out2;
        cmd_transfer(again, out2);
        CHECK(read_file(again.model_out) == read_file(opt.model_out));
        CHECK(read_file(again.avp_out) == read_file(opt.avp_out));
        CHECK(out2.str().find("holdout shots: 15 16 17 18 19") != std::string::npos);
    }

    SUBCASE("zero-epoch transfer keeps the base parameters") {
        TransferOptions zero = opt;
        zero.model_out = p.dir.file("zero.json");
        zero.avp_out = p.dir.file("zero_avp.csv");
        zero.train.epochs = 0;
        std::ostringstream out2;
        cmd_transfer(zero, out2);
        const ModelFile z = load_model_file(zero.model_out);
        CHECK(nets_equal(z.model.calibrated, z.model.base));
    }
}

TEST_CASE("cmd_transfer refuses a holdout larger than the series") {
    Pipeline p;
    TransferOptions opt;
    opt.model_in = p.base.model_out;
    opt.shots_csv = p.gen.shots_out;
    opt.model_out = p.dir.file("c.json");
    opt.avp_out = p.dir.file("a.csv");
    opt.holdout_size = 20;
    std::ostringstream sink;
    CHECK_THROWS_AS(cmd_transfer(opt, sink), std::runtime_error);
    opt.holdout_size = 0;
    CHECK_THROWS_AS(cmd_transfer(opt, sink), std::invalid_argument);
}

TEST_CASE("cmd_curve tabulates one row per ingested shot") {
    Pipeline p;
    CurveOptions opt;
    opt.model_in = p.base.model_out;
    opt.shots_csv = p.gen.shots_out;
    opt.curve_out = p.dir.file("curve.csv");
    opt.holdout_size = 5;
    opt.train.epochs = 10;
    opt.train.seed = 104;
    cmd_curve(opt);

    const std::string text = read_file(opt.curve_out);
    CHECK(count_lines(text) == 1 + 15);
    CHECK(text.substr(0, text.find('\n')) ==
          "n,campaign,err_bang_time,err_burnwidth,err_log10_yield_dt,err_tion_dt,"
          "err_log10_yield_dd,err_tion_dd,err_dsr");

    SUBCASE("threaded rerun produces identical bytes") {
        CurveOptions again = opt;
        again.curve_out = p.dir.file("curve2.csv");
        again.threads = 4;
        cmd_curve(again);
        CHECK(read_file(again.curve_out) == text);
    }
}

TEST_CASE("cmd_predict prints a deterministic seven-line report") {
    Pipeline p;
    TransferOptions t;
    t.model_in = p.base.model_out;
    t.shots_csv = p.gen.shots_out;
    t.model_out = p.dir.file("calibrated.json");
    t.avp_out = p.dir.file("avp.csv");
    t.holdout_size = 5;
    t.train.epochs = 20;
    t.train.seed = 105;
    std::ostringstream sink;
    cmd_transfer(t, sink);

    PredictOptions opt;
    opt.model_in = t.model_out;
    opt.sim_values = {8.0, 0.3, 15.0, 3.0, 13.0, 2.6, 0.03};

    std::ostringstream a, b;
    cmd_predict(opt, a);
    cmd_predict(opt, b);
    CHECK(a.str() == b.str());
    CHECK(count_lines(a.str()) == 7);
    CHECK(a.str().find("bang_time ") == 0);
    CHECK(a.str().find("dsr ") != std::string::npos);
}

TEST_CASE("CLI exit codes separate usage from data errors") {
    TempDir dir("simcal_cli");
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("generate --help") == 0);

    // Usage errors: unknown flag, missing required seed, wrong arity.
    CHECK(run_cli("generate --bogus 1 --seed 1") == 1);
    CHECK(run_cli("generate") == 1);
    CHECK(run_cli("predict --model m.json 1 2 3") == 1);
    CHECK(run_cli("") == 1);  // a subcommand is required

    // Data errors: missing or malformed input files.
    CHECK(run_cli("train-base --sim " + (dir.path / "absent.csv").string() +
                  " --seed 1 --model-out " + (dir.path / "m.json").string()) == 2);
    const auto bad_model = dir.file("bad.json");
    write_file_atomic(bad_model, "{\"format\": \"other\"}");
    CHECK(run_cli("predict --model " + bad_model.string() + " 1 2 3 4 5 6 7") == 2);
}
