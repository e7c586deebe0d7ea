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
#ifndef ESID_API_HTTP_SERVER_H
#define ESID_API_HTTP_SERVER_H

#include "esid/api/service.h"
#include "esid/utils/error.h"

#include <filesystem>
#include <memory>
#include <string>
#include <thread>

namespace httplib
{
class Server;
}

namespace esid::api
{

/// HTTP status for an esid::Error category.
int http_status(ErrorCode code);

/**
 * Serves the Service over HTTP:
 *
 *     GET  /scenarios
 *     GET  /scenarios/{id}
 *     GET  /scenarios/{id}/map?compartment&day&group&percentile
 *     GET  /chart?compartment&district&group
 *     GET  /scenarios/{id}/card?day&district&group
 *     POST /scenarios/{id}/runs
 *     GET  /runs/{id}/status
 *     GET  /casedata/{district}?group
 *     GET  /districts/search?q
 *
 * `group` defaults to "total". All responses are UTF-8 JSON.
 */
class HttpServer
{
public:
    explicit HttpServer(Service& service);
    ~HttpServer();

    HttpServer(const HttpServer&)            = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Serves static files (e.g. a dashboard bundle) under "/".
    bool mount_static(const std::filesystem::path& directory);

    /// Binds and serves on a background thread. Port 0 picks a free port; returns the bound port.
    int start(const std::string& host, int port);

    /// Binds and serves on the calling thread until stop() is called.
    bool listen(const std::string& host, int port);

    void stop();

private:
    Service& m_service;
    std::unique_ptr<httplib::Server> m_server;
    std::thread m_thread;
};

/// Splits "host:port"; throws ValidationError for a malformed address.
std::pair<std::string, int> parse_bind_address(const std::string& address);

} // namespace esid::api

#endif // ESID_API_HTTP_SERVER_H
