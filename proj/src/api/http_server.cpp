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
#include "esid/api/http_server.h"
#include "esid/utils/error.h"

#include "httplib.h"

#include <charconv>

namespace esid::api
{

using nlohmann::json;

int http_status(ErrorCode code)
{
    switch (code) {
    case ErrorCode::Validation:
        return 422;
    case ErrorCode::NotFound:
        return 404;
    default:
        return 500;
    }
}

namespace
{

void send_json(httplib::Response& res, const json& body, int status = 200)
{
    res.status = status;
    res.set_content(body.dump(), "application/json; charset=utf-8");
}

void send_error(httplib::Response& res, int status, const std::string& message)
{
    send_json(res, {{"error", {{"status", status}, {"message", message}}}}, status);
}

std::string param(const httplib::Request& req, const char* name)
{
    if (!req.has_param(name)) {
        throw ValidationError(std::string("missing query parameter '") + name + "'");
    }
    return req.get_param_value(name);
}

std::string param_or(const httplib::Request& req, const char* name, std::string fallback)
{
    return req.has_param(name) ? req.get_param_value(name) : std::move(fallback);
}

int int_param(const std::string& text, const char* name)
{
    int value = 0;
    auto res  = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw ValidationError(std::string("query parameter '") + name + "' must be an integer");
    }
    return value;
}

template <class Handler>
httplib::Server::Handler guarded(Handler handler)
{
    return [handler](const httplib::Request& req, httplib::Response& res) {
        try {
            handler(req, res);
        }
        catch (const Error& e) {
            send_error(res, http_status(e.code()), e.what());
        }
        catch (const json::exception& e) {
            send_error(res, 422, std::string("invalid JSON: ") + e.what());
        }
        catch (const std::exception& e) {
            send_error(res, 500, e.what());
        }
    };
}

} // namespace

HttpServer::HttpServer(Service& service)
    : m_service(service)
    , m_server(std::make_unique<httplib::Server>())
{
    auto& s = *m_server;
    Service& svc = m_service;

    s.Get("/scenarios", guarded([&svc](const httplib::Request&, httplib::Response& res) {
              send_json(res, svc.list_scenarios());
          }));
    s.Get(R"(/scenarios/([A-Za-z0-9_-]+))", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
              send_json(res, svc.get_scenario(req.matches[1].str()));
          }));
    s.Get(R"(/scenarios/([A-Za-z0-9_-]+)/map)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
              std::optional<int> percentile;
              if (req.has_param("percentile")) {
                  percentile = int_param(req.get_param_value("percentile"), "percentile");
              }
              auto slice = svc.map_slice(req.matches[1].str(), param(req, "compartment"),
                                         int_param(param(req, "day"), "day"), param_or(req, "group", "total"),
                                         percentile);
              send_json(res, to_json(slice));
          }));
    s.Get("/chart", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
              send_json(res, to_json(svc.chart_series(param(req, "compartment"), param(req, "district"),
                                                      param_or(req, "group", "total"))));
          }));
    s.Get(R"(/scenarios/([A-Za-z0-9_-]+)/card)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
              send_json(res, to_json(svc.card_values(req.matches[1].str(), int_param(param(req, "day"), "day"),
                                                     param(req, "district"), param_or(req, "group", "total"))));
          }));
    s.Post(R"(/scenarios/([A-Za-z0-9_-]+)/runs)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
               json body = req.body.empty() ? json() : json::parse(req.body);
               auto ticket = svc.trigger_run(run_request_from_json(req.matches[1].str(), body));
               res.set_header("Location", "/runs/" + ticket.run_id + "/status");
               send_json(res, to_json(ticket), 202);
           }));
    s.Get(R"(/runs/([A-Za-z0-9_-]+)/status)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
              send_json(res, svc.run_status(req.matches[1].str()));
          }));
    s.Get(R"(/casedata/([0-9]+))", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
              send_json(res, svc.case_series(req.matches[1].str(), param_or(req, "group", "total")));
          }));
    s.Get("/districts/search", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
              send_json(res, svc.search(param_or(req, "q", "")));
          }));

    s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty()) {
            send_error(res, res.status, res.status == 404 ? "not found" : "request failed");
        }
    });
}

HttpServer::~HttpServer()
{
    stop();
}

bool HttpServer::mount_static(const std::filesystem::path& directory)
{
    return m_server->set_mount_point("/", directory.string());
}

int HttpServer::start(const std::string& host, int port)
{
    int bound = port == 0 ? m_server->bind_to_any_port(host) : (m_server->bind_to_port(host, port) ? port : -1);
    if (bound < 0) {
        throw IoError("cannot bind " + host + ":" + std::to_string(port));
    }
    m_thread = std::thread([this] {
        m_server->listen_after_bind();
    });
    m_server->wait_until_ready();
    return bound;
}

bool HttpServer::listen(const std::string& host, int port)
{
    return m_server->listen(host, port);
}

void HttpServer::stop()
{
    m_server->stop();
    if (m_thread.joinable()) {
        m_thread.join();
    }
}

std::pair<std::string, int> parse_bind_address(const std::string& address)
{
    auto colon = address.rfind(':');
    if (colon == std::string::npos || colon == 0) {
        throw ValidationError("bind address must be host:port, got '" + address + "'");
    }
    std::string host = address.substr(0, colon);
    std::string port = address.substr(colon + 1);
    int value        = 0;
    auto res         = std::from_chars(port.data(), port.data() + port.size(), value);
    if (res.ec != std::errc{} || res.ptr != port.data() + port.size() || value < 0 || value > 65535) {
        throw ValidationError("bind address must be host:port, got '" + address + "'");
    }
    return {host, value};
}

} // namespace esid::api
