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
#ifndef ESID_UTILS_ERROR_H
#define ESID_UTILS_ERROR_H

#include <stdexcept>
#include <string>

namespace esid
{

/**
 * Category of a failure. The api layer maps categories onto HTTP status classes
 * and the cli onto exit codes.
 */
enum class ErrorCode
{
    Validation, ///< input violates a documented invariant (422 / exit 2)
    NotFound, ///< referenced entity does not exist (404)
    Format, ///< file or document does not follow its format contract
    Integration, ///< numerical failure during simulation
    Io, ///< file system failure
};

class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message)
        , m_code(code)
    {
    }

    ErrorCode code() const noexcept
    {
        return m_code;
    }

private:
    ErrorCode m_code;
};

class ValidationError : public Error
{
public:
    explicit ValidationError(const std::string& message)
        : Error(ErrorCode::Validation, message)
    {
    }
};

class NotFoundError : public Error
{
public:
    explicit NotFoundError(const std::string& message)
        : Error(ErrorCode::NotFound, message)
    {
    }
};

class FormatError : public Error
{
public:
    explicit FormatError(const std::string& message)
        : Error(ErrorCode::Format, message)
    {
    }
};

class IntegrationError : public Error
{
public:
    explicit IntegrationError(const std::string& message)
        : Error(ErrorCode::Integration, message)
    {
    }
};

class IoError : public Error
{
public:
    explicit IoError(const std::string& message)
        : Error(ErrorCode::Io, message)
    {
    }
};

} // namespace esid

#endif // ESID_UTILS_ERROR_H
