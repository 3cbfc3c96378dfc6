#include "dcid/error.hpp"
#include "dcid/nets.hpp"

#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace dcid;
using dcid::test::normal_matrix;

namespace {

MlpSpec tiny_spec(Activation act, std::uint64_t seed)
{
    MlpSpec spec;
    spec.input_dim = 3;
    spec.hidden_widths = {5, 4};
    spec.feature_dim = 3;
    spec.output_dim = 2;
    spec.activation = act;
    spec.seed = seed;
    return spec;
}

bool same_parameters(Mlp a, Mlp b)
{
    std::vector<double> pa;
    std::vector<double> pb;
    oracle::for_each_parameter(a, [&](double& v) { pa.push_back(v); });
    oracle::for_each_parameter(b, [&](double& v) { pb.push_back(v); });
    return pa == pb;
}

} // namespace

TEST_CASE("MlpSpec and TrainConfig validation")
{
    MlpSpec spec;
    spec.input_dim = 4;
    CHECK_NOTHROW(spec.validate());
    spec.hidden_widths = {64, 0};
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec.hidden_widths = {};
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec.hidden_widths = {8};
    spec.feature_dim = 0;
    CHECK_THROWS_AS(init_mlp(spec), ValidationError);

    TrainConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.batch_size = 0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    CHECK(parse_activation("tanh") == Activation::tanh);
    CHECK_THROWS_AS(parse_optimizer("rmsprop"), ValidationError);
}

TEST_CASE("initialization is seeded")
{
    const MlpSpec spec = tiny_spec(Activation::relu, 5);
    CHECK(same_parameters(init_mlp(spec), init_mlp(spec)));
    MlpSpec other = spec;
    other.seed = 6;
    CHECK_FALSE(same_parameters(init_mlp(spec), init_mlp(other)));
    const Mlp net = init_mlp(spec);
    CHECK(net.parameter_count() == 3 * 5 + 5 + 5 * 4 + 4 + 4 * 3 + 3 + 3 * 2 + 2);
    // Fan-in-scaled bound for relu.
    CHECK(net.layers[0].weights.cwiseAbs().maxCoeff() <= std::sqrt(6.0 / 3.0));
    CHECK(net.layers[1].weights.cwiseAbs().maxCoeff() <= std::sqrt(6.0 / 5.0));
}

TEST_CASE("zero input gives zero output for a relu net with zero biases")
{
    const Mlp net = init_mlp(tiny_spec(Activation::relu, 7));
    CHECK(net.forward(Matrix::Zero(4, 3)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("forward decomposes into head and features")
{
    Rng rng{121};
    for (int trial = 0; trial < 10; ++trial) {
        MlpSpec spec;
        spec.input_dim = test::uniform_index(rng, 1, 6);
        spec.hidden_widths = {test::uniform_index(rng, 1, 10), test::uniform_index(rng, 1, 10)};
        spec.feature_dim = test::uniform_index(rng, 1, 6);
        spec.output_dim = test::uniform_index(rng, 1, 3);
        spec.activation = trial % 2 == 0 ? Activation::relu : Activation::tanh;
        spec.seed = 100 + trial;
        Mlp net = init_mlp(spec);
        const Matrix x = normal_matrix(20, spec.input_dim, 200 + trial);
        net.fit_input_scaling(x);

        const Matrix f = net.features(x);
        CHECK(f.cols() == spec.feature_dim);
        const Matrix expected = (f * net.head_weights).rowwise() + net.head_bias.transpose();
        CHECK(test::max_abs_diff(net.forward(x), expected) <= 1e-12);
        CHECK(test::max_abs_diff(net.features(x.row(7)), f.row(7)) <= 1e-12);

        Matrix twins(2, spec.input_dim);
        twins.row(0) = x.row(3);
        twins.row(1) = x.row(3);
        const Matrix tf = net.features(twins);
        CHECK(tf.row(0) == tf.row(1));
    }
    const Mlp net = init_mlp(tiny_spec(Activation::relu, 1));
    CHECK_THROWS_AS(net.features(Matrix::Zero(2, 4)), ValidationError);
}

TEST_CASE("analytic gradients match central differences")
{
    for (Activation act : {Activation::tanh, Activation::relu}) {
        for (int trial = 0; trial < 5; ++trial) {
            Mlp net = init_mlp(tiny_spec(act, 300 + trial));
            // Nonzero biases so every bias gradient is exercised away from relu kinks.
            oracle::for_each_parameter(net, [](double& v) { v += 0.01; });
            const Matrix x = normal_matrix(16, 3, 400 + trial);
            const Matrix y = normal_matrix(16, 2, 500 + trial);
            const auto check = oracle::check_gradients(net, x, y);
            CAPTURE(trial);
            CHECK(check.parameters == static_cast<std::size_t>(net.parameter_count()));
            CHECK(check.max_relative_error < 1e-4);
        }
    }
}

TEST_CASE("training fits a linear teacher")
{
    const Matrix x = normal_matrix(2000, 4, 1);
    const Matrix w = normal_matrix(4, 1, 2);
    const Matrix y = x * w;
    MlpSpec spec;
    spec.input_dim = 4;
    spec.hidden_widths = {32};
    spec.feature_dim = 8;
    spec.activation = Activation::tanh;
    spec.seed = 3;
    TrainConfig cfg;
    cfg.learning_rate = 3e-3;
    cfg.epochs = 60;
    cfg.batch_size = 64;
    Mlp net = init_mlp(spec);
    net.fit_input_scaling(x);
    const TrainedMlp trained = train(net, x, y, cfg);
    const double var = (y.array() - y.mean()).square().mean();
    CHECK(trained.trace.train.size() == 61);
    CHECK(trained.trace.train.back() <= 0.01 * var);
    CHECK(trained.trace.train.back() <= trained.trace.train.front());
    CHECK(mse_loss(trained.model, x, y) == doctest::Approx(trained.trace.train.back()));
}

TEST_CASE("zero learning rate leaves the net unchanged")
{
    const Mlp net = init_mlp(tiny_spec(Activation::relu, 9));
    const Matrix x = normal_matrix(100, 3, 10);
    const Matrix y = normal_matrix(100, 2, 11) * 3.0;
    TrainConfig cfg;
    cfg.learning_rate = 0.0;
    cfg.epochs = 3;
    for (Optimizer opt : {Optimizer::adam, Optimizer::sgd}) {
        cfg.optimizer = opt;
        const TrainedMlp out = train(net, x, y, cfg);
        // Folding the target scaling in and out may round in the last bit.
        Mlp copy = out.model;
        std::vector<double> before;
        std::vector<double> after;
        Mlp original = net;
        oracle::for_each_parameter(original, [&](double& v) { before.push_back(v); });
        oracle::for_each_parameter(copy, [&](double& v) { after.push_back(v); });
        for (std::size_t i = 0; i < before.size(); ++i) {
            CHECK(after[i] == doctest::Approx(before[i]).epsilon(1e-12));
        }
        for (double loss : out.trace.train) {
            CHECK(loss == doctest::Approx(out.trace.train.front()).epsilon(1e-12));
        }
    }
}

TEST_CASE("zero epochs returns the input net")
{
    const Mlp net = init_mlp(tiny_spec(Activation::relu, 12));
    TrainConfig cfg;
    cfg.epochs = 0;
    const TrainedMlp out = train(net, normal_matrix(50, 3, 1), normal_matrix(50, 2, 2), cfg);
    CHECK(same_parameters(out.model, net));
    CHECK(out.trace.train.size() == 1);
}

TEST_CASE("training is deterministic and tracks each task")
{
    const Matrix x = normal_matrix(300, 3, 13);
    const Matrix y = normal_matrix(300, 2, 14);
    Mlp net = init_mlp(tiny_spec(Activation::relu, 15));
    net.fit_input_scaling(x);
    TrainConfig cfg;
    cfg.epochs = 4;
    cfg.shuffle_seed = 16;
    const Matrix xv = normal_matrix(40, 3, 17);
    const Matrix yv = normal_matrix(40, 2, 18);
    const TrainedMlp a = train(net, x, y, cfg, xv, yv);
    const TrainedMlp b = train(net, x, y, cfg, xv, yv);
    CHECK(same_parameters(a.model, b.model));
    REQUIRE(a.trace.per_task.size() == 2);
    CHECK(a.trace.per_task[0].size() == 5);
    CHECK(a.trace.validation.size() == 5);
    CHECK(a.trace.train[2] == doctest::Approx(a.trace.per_task[0][2] + a.trace.per_task[1][2]));
    cfg.shuffle_seed = 17;
    CHECK_FALSE(same_parameters(train(net, x, y, cfg).model, a.model));
}

TEST_CASE("divergence names the epoch")
{
    const Matrix x = normal_matrix(200, 3, 19) * 1e3;
    Matrix y = normal_matrix(200, 2, 20);
    MlpSpec spec = tiny_spec(Activation::relu, 21);
    TrainConfig cfg;
    cfg.optimizer = Optimizer::sgd;
    cfg.learning_rate = 1e6;
    cfg.epochs = 50;
    try {
        train(init_mlp(spec), x, y, cfg);
        FAIL("expected divergence");
    } catch (const DivergenceError& e) {
        CHECK(std::string(e.what()).find("epoch") != std::string::npos);
    }
    y(0, 0) = std::nan("");
    CHECK_THROWS_AS(train(init_mlp(spec), x, y, cfg), ValidationError);
}
