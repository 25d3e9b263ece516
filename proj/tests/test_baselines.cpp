#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "streambench/baselines.hpp"
#include "streambench/eval.hpp"
#include "streambench/rng.hpp"

using namespace streambench;

namespace {

std::vector<Instance> gaussian_blobs(Rng& rng, int per_class, double separation) {
    std::vector<Instance> out;
    for (int i = 0; i < per_class; ++i) {
        for (Label y : {0, 1}) {
            out.emplace_back(std::vector<double>{rng.gaussian() * 0.5 + y * separation,
                                                 rng.gaussian() * 0.5 - y * separation},
                             y);
        }
    }
    return out;
}

}  // namespace

TEST_SUITE("baselines") {
    TEST_CASE("k=1 returns the label of the single nearest point") {
        StreamSpec spec{2, 3, 0};
        KnnModel model{{Instance({0.0, 0.0}, 0), Instance({1.0, 1.0}, 1), Instance({2.0, 2.0}, 2)},
                       1,
                       spec};
        CHECK(knn_predict(model, Instance({0.1, 0.1})) == 0);
        CHECK(knn_predict(model, Instance({1.9, 1.9})) == 2);
        // a stored point queries to its own label
        CHECK(knn_predict(model, Instance({1.0, 1.0})) == 1);
    }

    TEST_CASE("prediction is invariant under permutations of the stored instances") {
        Rng rng(11);
        auto data = gaussian_blobs(rng, 40, 1.5);
        StreamSpec spec{2, 2, 0};
        KnnModel a{data, 5, spec};
        std::reverse(data.begin(), data.end());
        KnnModel b{data, 5, spec};
        for (int q = 0; q < 200; ++q) {
            const Instance probe({rng.uniform(-3, 3), rng.uniform(-3, 3)});
            CHECK(knn_predict(a, probe) == knn_predict(b, probe));
        }
    }

    TEST_CASE("agrees with an exhaustive-scan oracle on 200 random queries") {
        Rng rng(19);
        auto data = gaussian_blobs(rng, 60, 1.0);
        StreamSpec spec{2, 2, 0};
        const int k = 7;
        KnnModel model{data, k, spec};
        for (int q = 0; q < 200; ++q) {
            const Instance probe({rng.uniform(-3, 3), rng.uniform(-3, 3)});
            // oracle: full sort of (distance^2, label) pairs, majority of top k
            std::vector<std::pair<double, Label>> all;
            for (const auto& t : data) {
                const double dx = t.features[0] - probe.features[0];
                const double dy = t.features[1] - probe.features[1];
                all.emplace_back(dx * dx + dy * dy, *t.label);
            }
            std::sort(all.begin(), all.end());
            int votes[2] = {0, 0};
            for (int i = 0; i < k; ++i) ++votes[all[static_cast<std::size_t>(i)].second];
            const Label expected = votes[1] > votes[0] ? 1 : 0;
            CHECK(knn_predict(model, probe) == expected);
        }
    }

    TEST_CASE("grid search finds a high-F1 k on separated blobs") {
        Rng rng(23);
        auto train = gaussian_blobs(rng, 80, 2.0);
        auto val = gaussian_blobs(rng, 30, 2.0);
        StreamSpec spec{2, 2, 0};
        const KnnModel model = knn_fit_gridsearch(train, val, spec);
        CHECK(model.k >= 2);
        CHECK(model.k <= 20);
        ConfusionState confusion(2);
        for (const auto& v : val) confusion.record(knn_predict(model, v), *v.label);
        CHECK(confusion.macro_f1().value_or(0.0) > 0.95);
    }

    TEST_CASE("single-class data ties across every k and keeps k=2") {
        std::vector<Instance> train, val;
        Rng rng(5);
        for (int i = 0; i < 50; ++i) {
            train.emplace_back(std::vector<double>{rng.uniform(), rng.uniform()}, 0);
            if (i < 20) val.emplace_back(std::vector<double>{rng.uniform(), rng.uniform()}, 0);
        }
        StreamSpec spec{2, 2, 0};
        const KnnModel model = knn_fit_gridsearch(train, val, spec);
        CHECK(model.k == 2);  // all ks tie at F1 = 1.0
        ConfusionState confusion(2);
        for (const auto& v : val) confusion.record(knn_predict(model, v), *v.label);
        CHECK(confusion.macro_f1().value_or(0.0) == 1.0);
    }

    TEST_CASE("undersized splits are usage errors") {
        StreamSpec spec{1, 2, 0};
        std::vector<Instance> tiny{Instance({0.0}, 0)};
        std::vector<Instance> val{Instance({0.0}, 0)};
        CHECK_THROWS_AS(knn_fit_gridsearch(tiny, val, spec), UsageError);
        CHECK_THROWS_AS(knn_fit_gridsearch({}, val, spec), UsageError);
    }

    TEST_CASE("knn memory accounting follows the stored-instance record") {
        StreamSpec spec{3, 2, 0};
        KnnModel model{{Instance({0, 0, 0}, 0), Instance({1, 1, 1}, 1)}, 1, spec};
        CHECK(model.memory_bytes() == 2 * (3 * 8 + 4) + 4);
    }
}
