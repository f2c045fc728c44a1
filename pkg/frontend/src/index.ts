export { Session, SessionError } from "./session.js";
export type { Complex, SessionOptions } from "./session.js";
