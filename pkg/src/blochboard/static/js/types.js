// Wire types for the session service. Field names and shapes follow the
// server's frame JSON exactly; anything optional here is genuinely optional
// on the wire (command acks add fields that stream frames lack).
export {};
