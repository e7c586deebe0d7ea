/*
* Copyright (C) 2026 ESID contributors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#include "support/fixtures.h"
#include "support/mutations.h"

#include "esid/api/service.h"
#include "esid/store/catalog.h"
#include "esid/store/result_io.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

namespace esid
{
namespace
{

namespace fs = std::filesystem;

const fs::path kData = ESID_DATA_DIR;

struct Outcome {
    int code = -1;
    std::string output; // stdout and stderr interleaved
};

std::string quote(const std::string& s)
{
    std::string out = "'";
    for (char c : s) {
        out += c == '\'' ? std::string("'\\''") : std::string(1, c);
    }
    return out + "'";
}

/// Runs the cli with a scrubbed environment plus `env`.
Outcome cli(const std::string& args, const std::string& env = {})
{
    std::string cmd = "env -u ESID_STORE -u ESID_GRAPH -u ESID_BIND " + env + " " + quote(ESID_CLI_PATH) + " " +
                      args + " 2>&1";
    Outcome o;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return o;
    }
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) {
        o.output.append(buf, n);
    }
    int status = pclose(pipe);
    o.code     = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return o;
}

std::string scenario(const char* name)
{
    return quote((kData / "toy" / "scenarios" / name).string());
}

/// A copy of the lockdown scenario with `edit` applied and an absolute graph path.
std::string edited_scenario(const testing::TempDir& dir, const std::function<void(nlohmann::json&)>& edit)
{
    std::ifstream in(kData / "toy" / "scenarios" / "lockdown.json");
    auto doc     = nlohmann::json::parse(in);
    doc["graph"] = (kData / "toy" / "graph.json").string();
    edit(doc);
    auto path = dir.path() / "scenario.json";
    std::ofstream(path) << doc.dump(2);
    return quote(path.string());
}

class CliTest : public ::testing::Test
{
protected:
    testing::TempDir dir{"esid-cli"};

    std::string out(const char* name = "result")
    {
        return quote((dir.path() / name).string());
    }
};

TEST_F(CliTest, RunWritesAValidResult)
{
    auto run = cli("run " + scenario("lockdown.json") + " --members 4 --out " + out());
    ASSERT_EQ(run.code, 0) << run.output;
    EXPECT_NE(run.output.find("done in"), std::string::npos);
    auto check = cli("validate " + out());
    EXPECT_EQ(check.code, 0) << check.output;
    auto result = load_result(dir.path() / "result");
    EXPECT_EQ(result.metadata().members, 4u);
    EXPECT_EQ(result.num_days(), 100);
}

TEST_F(CliTest, InvalidDampingIsAUsageError)
{
    auto path = edited_scenario(dir, [](nlohmann::json& s) {
        s["dampings"][0]["strength"] = 2;
    });
    auto run = cli("run " + path + " --out " + out());
    EXPECT_EQ(run.code, 2);
    EXPECT_NE(run.output.find("strength"), std::string::npos) << run.output;
    EXPECT_FALSE(fs::exists(dir.path() / "result"));
}

TEST_F(CliTest, MissingGraphIsAUsageError)
{
    auto path = edited_scenario(dir, [](nlohmann::json& s) {
        s["graph"] = "/nonexistent/graph.json";
    });
    auto run = cli("run " + path + " --out " + out());
    EXPECT_EQ(run.code, 2);
    EXPECT_NE(run.output.find("file not found"), std::string::npos) << run.output;
}

TEST_F(CliTest, UsageErrors)
{
    EXPECT_EQ(cli("").code, 2);
    EXPECT_EQ(cli("frobnicate").code, 2);
    EXPECT_EQ(cli("run").code, 2);
    EXPECT_EQ(cli("run " + scenario("baseline.json")).code, 2); // neither --out nor --store
    EXPECT_EQ(cli("--help").code, 0);
}

TEST_F(CliTest, ValidateRejectsTamperedResults)
{
    ASSERT_EQ(cli("run " + scenario("baseline.json") + " --members 2 --out " + out()).code, 0);
    auto lines = testing::read_lines(dir.path() / "result" / kResultsFile);
    lines[3].replace(lines[3].find('['), 1, "[-1.5,");
    testing::write_lines(dir.path() / "result" / kResultsFile, lines);
    auto check = cli("validate " + out());
    EXPECT_EQ(check.code, 1);
    EXPECT_NE(check.output.find("line 4"), std::string::npos) << check.output;

    EXPECT_EQ(cli("validate " + out("missing")).code, 2);
}

TEST_F(CliTest, ExportFormats)
{
    auto path = edited_scenario(dir, [](nlohmann::json& s) {
        s["num_days"] = 10;
        s["members"]  = 4;
    });
    ASSERT_EQ(cli("run " + path + " --out " + out()).code, 0);

    auto csv = cli("export " + out() + " --compartment I --district 05315");
    ASSERT_EQ(csv.code, 0) << csv.output;
    std::istringstream in(csv.output);
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        rows.push_back(line);
    }
    ASSERT_EQ(rows.size(), 12u);
    EXPECT_EQ(rows[0], "day,p5,p25,p50,p75,p95");
    EXPECT_TRUE(rows[11].starts_with("10,"));

    auto to_file = cli("export " + out() + " --compartment D --format json --out " + out("d.json"));
    ASSERT_EQ(to_file.code, 0) << to_file.output;
    std::ifstream file(dir.path() / "d.json");
    auto doc = nlohmann::json::parse(file);
    EXPECT_EQ(doc["values"].size(), kNumPercentiles);
    EXPECT_EQ(doc["days"].size(), 11u);

    EXPECT_EQ(cli("export " + out() + " --compartment I --format xml").code, 2);
    EXPECT_EQ(cli("export " + out() + " --compartment Q").code, 2);
    EXPECT_EQ(cli("export " + out() + " --compartment I --district 99999").code, 2);
    EXPECT_EQ(cli("export no-such-run --compartment I").code, 1);
}

TEST_F(CliTest, StoreRunsMatchTheQueryService)
{
    auto store = quote((dir.path() / "store").string());
    auto graph = quote((kData / "toy" / "graph.json").string());
    ASSERT_EQ(cli("--store " + store + " run " + scenario("lockdown.json") + " --members 4").code, 0);
    auto ingest = cli("--store " + store + " ingest " + quote((kData / "toy" / "cases.csv").string()));
    EXPECT_EQ(ingest.code, 0) << ingest.output;

    auto exported = cli("--store " + store + " export lockdown-1 --compartment H --district 05314 --format json");
    ASSERT_EQ(exported.code, 0) << exported.output;
    auto doc = nlohmann::json::parse(exported.output);

    StoreCatalog catalog(dir.path() / "store");
    api::Service service(catalog);
    auto chart = service.chart_series("H", "05314", "total");
    ASSERT_EQ(chart.scenarios.size(), 1u);
    for (std::size_t p = 0; p < kNumPercentiles; ++p) {
        EXPECT_EQ(doc["values"][p].get<std::vector<double>>(), chart.scenarios[0].percentiles[p]);
    }
    EXPECT_FALSE(service.case_series("05315", "total")["dates"].empty());

    auto search = cli("--json --store " + store + " search bonn");
    ASSERT_EQ(search.code, 0) << search.output;
    EXPECT_NE(search.output.find("05314"), std::string::npos);
    EXPECT_EQ(cli("--graph " + graph + " search köl").code, 0);
}

TEST_F(CliTest, RepeatedRunsAreIdentical)
{
    ASSERT_EQ(cli("run " + scenario("protect-elderly.json") + " --members 3 --out " + out("a")).code, 0);
    ASSERT_EQ(cli("run " + scenario("protect-elderly.json") + " --members 3 --out " + out("b")).code, 0);
    auto a = load_result(dir.path() / "a");
    auto b = load_result(dir.path() / "b");
    EXPECT_TRUE(std::ranges::equal(a.values(), b.values()));
}

TEST_F(CliTest, SettingsPrecedence)
{
    auto good   = quote((kData / "toy" / "graph.json").string());
    auto bad    = quote("/nonexistent/graph.json");
    auto config = dir.path() / "esid.json";

    std::ofstream(config) << nlohmann::json{{"graph", "/nonexistent/graph.json"}}.dump();
    auto with_config = "--config " + quote(config.string()) + " ";
    EXPECT_EQ(cli(with_config + "search bonn").code, 2);                               // config alone
    EXPECT_EQ(cli(with_config + "search bonn", "ESID_GRAPH=" + good).code, 0);         // env beats config
    EXPECT_EQ(cli(with_config + "--graph " + bad + " search bonn", "ESID_GRAPH=" + good).code, 2); // flag beats env
    EXPECT_EQ(cli("--graph " + good + " search bonn", "ESID_GRAPH=" + bad).code, 0);

    std::ofstream(config) << nlohmann::json{{"graph", (kData / "toy" / "graph.json").string()}}.dump();
    EXPECT_EQ(cli(with_config + "search bonn").code, 0);

    std::ofstream(config) << "[1, 2]";
    EXPECT_EQ(cli(with_config + "search bonn").code, 2);
    EXPECT_EQ(cli("--config " + quote((dir.path() / "absent.json").string()) + " search bonn").code, 2);
}

} // namespace
} // namespace esid
