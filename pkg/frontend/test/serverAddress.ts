/** Where the test server listens; shared by globalSetup and the tests. */
export const BASE = "http://127.0.0.1:8937";
